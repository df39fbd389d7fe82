#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quasilab/algebra.hpp"
#include "quasilab/budget.hpp"
#include "quasilab/morphisms.hpp"
#include "quasilab/partition.hpp"
#include "quasilab/report.hpp"
#include "quasilab/term.hpp"

namespace quasilab {

// F_Q(n) for Q = Q(K), realized as the subalgebra of prod_{B in K} B^(B^n)
// generated by the n projections (and the constants). Element i carries the
// term that first produced it.
class FreeAlgebra {
 public:
  struct Coordinate {
    std::size_t member;
    std::vector<Elem> assignment;
  };

  const std::vector<Algebra>& K() const { return K_; }
  const Signature& sig() const { return K_.front().sig; }
  std::uint32_t rank() const { return rank_; }
  std::size_t size() const { return witness_.size(); }
  bool truncated() const { return truncated_; }
  // Cap that stopped the closure ("free_size" or "closure_steps"), empty
  // when complete.
  const std::string& tripped_cap() const { return tripped_; }
  // Throws BudgetExceeded naming the tripped cap when truncated.
  void require_complete(const Budget& budget) const;
  const std::vector<Coordinate>& coordinates() const { return coords_; }
  const Term& witness(std::size_t e) const { return witness_[e]; }
  // Element index of generator i.
  Elem generator(std::uint32_t i) const { return generators_[i]; }
  const std::vector<Elem>& generators() const { return generators_; }

  // Coordinate values of element e.
  std::vector<Elem> values(std::size_t e) const;
  Elem value(std::size_t e, std::size_t coord) const;
  // Element with the given coordinate values, if present.
  std::optional<Elem> find(std::span<const Elem> values) const;
  // Value of a term (over rank() variables) as an element.
  std::optional<Elem> element_of(const Term& t) const;

  // Recipe of element e: op index (-1 for a generator) and argument elements.
  int recipe_op(std::size_t e) const { return recipe_op_[e]; }
  std::span<const Elem> recipe_args(std::size_t e) const;

  // Materialized finite algebra (labels e0, e1, ...). Throws
  // BudgetExceeded("free_size") when truncated.
  const Algebra& algebra(const Budget& budget = {}) const;

  json witnesses_json() const;

  struct Store;

 private:
  friend FreeAlgebra free_algebra(const std::vector<Algebra>& K, std::uint32_t n, const Budget& budget);

  std::vector<Algebra> K_;
  std::uint32_t rank_ = 0;
  std::vector<Coordinate> coords_;
  std::vector<Term> witness_;
  std::vector<int> recipe_op_;
  std::vector<std::uint32_t> recipe_first_;
  std::vector<Elem> recipe_args_;
  std::vector<Elem> generators_;
  bool truncated_ = false;
  std::string tripped_;
  std::shared_ptr<const Store> store_;
  mutable std::shared_ptr<Algebra> materialized_;
};

// Closure is breadth-first with ops in signature order. Stops at
// budget.free_size elements and flags the result truncated.
FreeAlgebra free_algebra(const std::vector<Algebra>& K, std::uint32_t n, const Budget& budget = {});

// e |-> witness(e) evaluated at images. Throws PreconditionError("target
// outside Q(K)") when the map is not a homomorphism. check = false skips
// that test for targets already known to lie in Q(K).
HomMap eval_hom(const FreeAlgebra& F, const Algebra& target, std::span<const Elem> images,
                const Budget& budget = {}, bool check = true);

struct PresentedAlgebra {
  std::shared_ptr<const FreeAlgebra> base;
  std::vector<Equation> relations;
  Congruence theta;
  Algebra quotient;
  HomMap map;  // F ->> quotient
};

// F_Q(n)/theta_Q(relations): theta is the kernel of the projection onto the
// coordinates at which every relation holds.
PresentedAlgebra finitely_presented(const std::vector<Algebra>& K, std::uint32_t n,
                                    const std::vector<Equation>& relations, const Budget& budget = {});

}  // namespace quasilab
