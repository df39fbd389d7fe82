#pragma once

#include <span>
#include <vector>

#include "quasilab/algebra.hpp"
#include "quasilab/report.hpp"

namespace quasilab {

// An equivalence relation on {0, ..., n-1} stored as block ids, where the id
// of a block is its least member. Ordering is lexicographic on the id array.
struct Congruence {
  std::vector<Elem> block;

  std::size_t size() const { return block.size(); }
  bool related(Elem i, Elem j) const { return block[i] == block[j]; }
  std::size_t num_blocks() const;
  bool is_identity() const { return num_blocks() == size(); }
  bool is_all() const { return num_blocks() <= 1; }
  // Refinement order: *this <= other.
  bool leq(const Congruence& other) const;
  std::vector<std::vector<Elem>> blocks() const;
  // Least pair (i < j) with i ~ j, if any.
  bool least_pair(Elem& i, Elem& j) const;

  bool operator==(const Congruence&) const = default;
  auto operator<=>(const Congruence&) const = default;

  static Congruence identity(std::size_t n);
  static Congruence all(std::size_t n);
  // From arbitrary class labels (equal labels = same block).
  static Congruence from_labels(std::span<const Elem> labels);
};

Congruence meet(const Congruence& a, const Congruence& b);
// Join in the lattice of equivalence relations (transitive closure).
Congruence equivalence_join(const Congruence& a, const Congruence& b);
Congruence kernel(std::span<const Elem> map);
bool is_compatible(const Algebra& a, const Congruence& c);

json to_json(const Congruence& c);

}  // namespace quasilab
