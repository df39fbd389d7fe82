#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace quasilab {

// Resource caps. Every search that can trip one throws BudgetExceeded naming
// the cap, which decision procedures turn into an "unknown" verdict.
struct Budget {
  std::uint64_t assignments = 200'000'000;
  std::uint64_t hom_nodes = 50'000'000;
  std::uint64_t free_size = 20'000;
  std::uint64_t clone_size = 100'000;
  std::uint64_t subalgebra_size = 12;
  std::uint64_t product_size = 100'000;
  std::uint64_t lattice_size = 20'000;
  std::uint64_t term_nodes = 2'000'000;
  std::uint64_t table_entries = 50'000'000;
  std::uint64_t closure_steps = 6'000'000'000;  // op applications in a free-algebra closure

  // Sets a cap by key ("free_size", "hom_nodes", ...). Throws Error on an
  // unknown key.
  void set(const std::string& key, std::uint64_t value);
  // Value of a cap by key; 0 for an unknown key.
  std::uint64_t get(const std::string& key) const;
  static std::vector<std::string> keys();
};

}  // namespace quasilab
