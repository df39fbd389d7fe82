#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "quasilab/algebra.hpp"
#include "quasilab/budget.hpp"
#include "quasilab/partition.hpp"
#include "quasilab/report.hpp"

namespace quasilab {

using Pair = std::pair<Elem, Elem>;

// Least congruence containing the pairs.
Congruence cg(const Algebra& a, std::span<const Pair> pairs);
Congruence cg(const Algebra& a, Elem x, Elem y);

// A finite lattice of congruences of one algebra, sorted lexicographically.
// Relative lattices are meet-closed; their join is the least member above
// both arguments, which need not be the equivalence join.
class CongruenceLattice {
 public:
  CongruenceLattice(std::size_t algebra_size, std::vector<Congruence> members, bool relative);

  const std::vector<Congruence>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  const Congruence& operator[](std::size_t i) const { return members_[i]; }
  bool relative() const { return relative_; }
  std::optional<std::size_t> find(const Congruence& c) const;
  std::size_t bottom() const { return bottom_; }
  std::size_t top() const { return top_; }
  bool contains_identity() const;

  bool leq(std::size_t i, std::size_t j) const { return members_[i].leq(members_[j]); }
  std::size_t meet(std::size_t i, std::size_t j) const;
  std::size_t join(std::size_t i, std::size_t j) const;
  // Least member containing the pair (relative principal congruence).
  std::size_t principal(Elem x, Elem y) const;

  const std::vector<std::size_t>& upper_covers(std::size_t i) const;
  const std::vector<std::size_t>& lower_covers(std::size_t i) const;
  bool meet_irreducible(std::size_t i) const { return i != top_ && upper_covers(i).size() == 1; }
  bool atom(std::size_t i) const;
  // Returns a failing triple when not distributive.
  bool distributive(std::size_t* x = nullptr, std::size_t* y = nullptr, std::size_t* z = nullptr) const;

  json to_json() const;

 private:
  void build_order() const;

  std::size_t n_;
  std::vector<Congruence> members_;
  bool relative_;
  std::size_t bottom_ = 0;
  std::size_t top_ = 0;
  mutable bool ordered_ = false;
  mutable std::vector<std::vector<std::size_t>> up_;
  mutable std::vector<std::vector<std::size_t>> down_;
};

CongruenceLattice con_all(const Algebra& a, const Budget& budget = {});
// Meet-closure of the kernels of all homs a -> B (B in K), plus the total
// relation. Contains the identity iff a is in ISP(K).
CongruenceLattice con_q(const Algebra& a, const std::vector<Algebra>& K, const Budget& budget = {});
// Distinct kernels of homs a -> B, B in K.
std::vector<Congruence> hom_kernels(const Algebra& a, const std::vector<Algebra>& K, const Budget& budget = {});
bool in_isp(const Algebra& a, const std::vector<Algebra>& K, const Budget& budget = {});

Report q_irreducible(const Algebra& a, const std::vector<Algebra>& K, const Budget& budget = {});
// Lexicographically least maximal member of con_q(a, K) restricting to the
// identity on sub. Throws PreconditionError when none exists.
Congruence max_separating_congruence(const Algebra& a, std::span<const Elem> sub, const std::vector<Algebra>& K,
                                     const Budget& budget = {});
// Meet of the meet-irreducible Q-congruences omitting the pair. Throws
// PreconditionError unless con_q is distributive and the result is the
// pseudocomplement of the relative principal congruence of the pair.
Congruence gamma_pseudocomplement(const Algebra& a, const std::vector<Algebra>& K, Pair pair,
                                  const Budget& budget = {});
// coords[e] = coordinates of element e of a subdirect product of factors.
Report is_filtral(const std::vector<Algebra>& factors, const std::vector<std::vector<Elem>>& coords,
                  const Congruence& theta);
// With K empty, the absolute congruence lattice is used.
Report three_permute(const Algebra& a, const std::vector<Algebra>& K, const Budget& budget = {});

}  // namespace quasilab
