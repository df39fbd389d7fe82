#pragma once

#include <optional>
#include <vector>

#include "quasilab/algebra.hpp"
#include "quasilab/budget.hpp"
#include "quasilab/deduction.hpp"
#include "quasilab/report.hpp"

namespace quasilab {

// Is b a retract of F_Q(g), g the least generator count of b? Throws
// PreconditionError("not a Q-member") unless b is in ISP(K).
Report projective(const Quasivariety& Q, const Algebra& b);
// Searches theta in Con_Q(F_Q(rank)) below the kernel of some surjection
// onto b with b not embeddable in the quotient. rank defaults to the least
// generator count of b.
Report weakly_projective(const Quasivariety& Q, const Algebra& b, std::optional<std::uint32_t> rank = {});
// Is every member of con_q(a, K) the kernel of an endomorphism of a?
Report endo_kernel_check(const Algebra& a, const std::vector<Algebra>& K, const Budget& budget = {});

struct Irreducible {
  Algebra algebra;
  std::string parent;
  std::vector<Elem> carrier;
};
// Q-irreducible subalgebras of members of K, one per isomorphism class.
std::vector<Irreducible> q_irreducibles(const Quasivariety& Q);
Report primitive(const Quasivariety& Q);

}  // namespace quasilab
