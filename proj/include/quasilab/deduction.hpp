#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quasilab/algebra.hpp"
#include "quasilab/budget.hpp"
#include "quasilab/freealg.hpp"
#include "quasilab/report.hpp"
#include "quasilab/term.hpp"

namespace quasilab {

// Q = Q(K) with cached free algebras.
class Quasivariety {
 public:
  explicit Quasivariety(std::vector<Algebra> K, Budget budget = {});

  const std::vector<Algebra>& K() const { return K_; }
  const Signature& sig() const { return K_.front().sig; }
  const Budget& budget() const { return budget_; }
  std::string name() const;

  // n* = max(1, max over B in K of the least generator count of B). Every
  // assignment into B factors through B's generators, so F_Q(omega) embeds
  // into a power of F_Q(n*) and both satisfy the same quasiequations.
  std::uint32_t default_rank() const { return default_rank_; }
  std::uint32_t rank() const { return override_ ? *override_ : default_rank_; }
  void set_rank(std::optional<std::uint32_t> r) { override_ = r; }
  bool rank_overridden() const { return override_.has_value(); }

  // Throws BudgetExceeded("free_size") when the closure is truncated.
  const FreeAlgebra& free(std::uint32_t n) const;
  std::shared_ptr<const FreeAlgebra> free_ptr(std::uint32_t n) const;

 private:
  std::vector<Algebra> K_;
  Budget budget_;
  std::uint32_t default_rank_ = 1;
  std::optional<std::uint32_t> override_;
  mutable std::map<std::uint32_t, std::shared_ptr<const FreeAlgebra>> cache_;
};

Report derivable(const Quasivariety& Q, const Quasiequation& phi);
// Validity in F_Q(rank), rank defaulting to Q.rank().
Report admissible(const Quasivariety& Q, const Quasiequation& phi, std::optional<std::uint32_t> rank = {});
Report structurally_complete(const Quasivariety& Q);
Report in_structural_core(const Quasivariety& Q, const Algebra& b);
// Embedding search into F_Q(1), ..., F_Q(max_vars). A failed search is
// reported as unknown ("no-up-to") unless a certificate rules out every rank.
Report exact(const Quasivariety& Q, const Algebra& b, std::uint32_t max_vars);
// Diagram of b as premises, the least monolith pair as conclusion. Throws
// PreconditionError unless b is Q-irreducible.
Quasiequation characteristic_quasiequation(const Quasivariety& Q, const Algebra& b);

}  // namespace quasilab
