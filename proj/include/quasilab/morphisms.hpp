#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "quasilab/algebra.hpp"
#include "quasilab/budget.hpp"
#include "quasilab/partition.hpp"
#include "quasilab/report.hpp"

namespace quasilab {

using HomMap = std::vector<Elem>;

enum class HomFilter { all, surjective, injective, separating };

struct HomOptions {
  HomFilter filter = HomFilter::all;
  // For HomFilter::separating: the images of these two must differ.
  std::pair<Elem, Elem> pair{0, 0};
  // Optional per-source-element allowed images: allowed[e][v] != 0.
  std::vector<std::vector<char>> allowed;
};

enum class SearchStatus { complete, stopped, budget };

// Generator-image backtracking. Images of a generating set are chosen in
// increasing order; the rest of the map follows from the recorded recipes
// and every op table is checked as soon as its arguments are mapped.
class HomSearch {
 public:
  HomSearch(const Algebra& a, const Algebra& b, HomOptions opts = {}, const Budget& budget = {});
  // Calls visit on each hom in search order until it returns false.
  SearchStatus run(const std::function<bool(const HomMap&)>& visit);
  std::uint64_t nodes() const { return nodes_; }

 private:
  struct Recipe {
    Elem elem;
    int op;
    std::vector<Elem> args;
  };
  struct Level {
    Elem generator;
    std::vector<Recipe> derived;
    std::vector<Elem> fresh;  // generator followed by derived elements
  };

  bool extend(std::size_t level, const std::function<bool(const HomMap&)>& visit);
  bool assign_fresh(const Level& lv, std::size_t upto_mapped);
  bool check_level(const std::vector<Elem>& fresh);
  void undo(const std::vector<Elem>& fresh);
  bool image_ok(Elem e, Elem v) const;

  const Algebra& a_;
  const Algebra& b_;
  HomOptions opts_;
  std::uint64_t node_cap_;
  std::uint64_t nodes_ = 0;
  bool out_of_budget_ = false;
  bool stopped_ = false;

  std::vector<Recipe> base_;  // elements generated by the constants alone
  std::vector<Elem> base_elems_;
  std::vector<Level> levels_;
  std::vector<int> rank_;  // level at which each element gets mapped (0 = base)
  HomMap map_;
  std::vector<char> mapped_;
  std::vector<std::uint32_t> used_;
};

bool is_homomorphism(const Algebra& a, const Algebra& b, std::span<const Elem> map);

// All homs a -> b passing the filter. Throws BudgetExceeded("hom_nodes").
std::vector<HomMap> homs(const Algebra& a, const Algebra& b, const HomOptions& opts = {},
                         const Budget& budget = {});
std::optional<HomMap> find_hom(const Algebra& a, const Algebra& b, const HomOptions& opts = {},
                               const Budget& budget = {});

// Do the homs a -> b (restricted by opts.allowed) separate every pair of a?
// On failure sets `pair` to the least inseparable pair.
bool homs_separate_points(const Algebra& a, const Algebra& b, std::pair<Elem, Elem>* pair = nullptr,
                          const Budget& budget = {});

Report embeds(const Algebra& b, const Algebra& a, const Budget& budget = {});
Report isomorphic(const Algebra& a, const Algebra& b, const Budget& budget = {});
// yes iff there are g: a ->> b and h: b >-> a with g o h = id_b.
Report retracts(const Algebra& a, const Algebra& b, const Budget& budget = {});

struct Product {
  Algebra algebra;
  // coords[e][i] = i-th coordinate of element e.
  std::vector<std::vector<Elem>> coords;
};
// Elements in lexicographic order of coordinate tuples.
Product product(const std::vector<Algebra>& factors, const Budget& budget = {});

struct Quotient {
  Algebra algebra;
  HomMap map;  // canonical surjection
};
// Blocks are numbered in order of their least members. Pass
// check = false when c is known to be a congruence (e.g. a kernel).
Quotient quotient(const Algebra& a, const Congruence& c, bool check = true);

struct Subalgebra {
  Algebra algebra;
  std::vector<Elem> carrier;  // new index i is carrier[i] of the parent
};
std::vector<Elem> generated_subalgebra(const Algebra& a, std::span<const Elem> seeds);
// Throws Error when the carrier is not a subuniverse or is empty.
Subalgebra subalgebra(const Algebra& a, std::span<const Elem> carrier);
// Least number of generators of a (increasing subset search).
std::size_t min_generators(const Algebra& a, std::vector<Elem>* witness = nullptr);

struct SubalgebraEntry {
  std::vector<Elem> carrier;
  std::string key;
};
struct SubalgebraList {
  std::vector<SubalgebraEntry> entries;  // one per isomorphism class
};
// Throws BudgetExceeded("subalgebra_size") for |a| above the cap.
SubalgebraList subalgebras_upto_iso(const Algebra& a, const Budget& budget = {});

// Per-element isomorphism invariants.
std::vector<std::uint64_t> element_invariants(const Algebra& a);

json hom_to_json(std::span<const Elem> map);

}  // namespace quasilab
