#pragma once

#include <string>
#include <vector>

#include "quasilab/algebra.hpp"
#include "quasilab/budget.hpp"
#include "quasilab/deduction.hpp"
#include "quasilab/report.hpp"
#include "quasilab/term.hpp"

namespace quasilab {

// Ternary p with p(a,b,c) = c for a != b, p(a,a,.) constant and idempotent
// diagonal pi. The witness lists pi per algebra.
Report is_dual_i_discriminator(const std::vector<Algebra>& algs, const Term& p, const Budget& budget = {});
// p(a,b,c,d) = q(a,b,c,d) iff a = b or c = d, over all quadruples.
Report is_rpip_witness(const std::vector<Algebra>& algs, const Term& p, const Term& q, const Budget& budget = {});
// p(a,b,c) = p(a,b,d) iff a = b or c = d, over all quadruples.
Report is_rtpip_witness(const std::vector<Algebra>& algs, const Term& p, const Budget& budget = {});

struct JonssonTerms {
  Term t1;  // p(p(x,y,z),y,x)
  Term t2;  // p(p(x,y,y),z,z)
};
JonssonTerms jonsson_terms(const Term& p);
// t1(x,y,x) = t2(x,y,x) = x, t1(x,x,z) = x, t2(x,x,z) = z, t1(x,z,z) = t2(x,z,z).
Report verify_jonsson(const std::vector<Algebra>& algs, const JonssonTerms& t, const Budget& budget = {});

struct Synthesis {
  Term d;
  std::uint32_t n = 0;
  std::uint32_t L = 0;
  Report certificate;  // is_dual_i_discriminator(irreducibles, d)
};
// p_1 = p, p_{k+1} = p(x,y,p_k); n least with p_n(a,b,c) = c for a != b;
// tau the diagonal of p_n; L least with tau^{2L} = tau^L; q_0 = z,
// q_{k+1} = p_n(q_k(x,y,x), q_k(x,y,y), q_k(x,y,z)); d = q_L. Throws
// PreconditionError unless p passes is_rtpip_witness, and BudgetExceeded
// ("term_nodes") when d grows past the cap.
Synthesis synth_dual_i_discriminator(const std::vector<Algebra>& irreducibles, const Term& p,
                                     const Budget& budget = {});

// (c,d) in cg_Q(a,b) iff p(c,d,u) = p(c,d,p(a,b,u)) for all u.
Report edprc_check(const Algebra& a, const std::vector<Algebra>& K, const Term& p, const Budget& budget = {});

// Value of the first nullary op; throws PreconditionError if there is none.
Elem default_zero(const Algebra& a);
// A term in at most one variable with constant value e on a: a nullary op,
// or f(x,x) or f(x) for a fundamental f. Throws PreconditionError if none.
Term constant_term(const Algebra& a, Elem e);

// s(x,x) = 0 and s(x,0) = x.
Report is_subtraction_term(const Algebra& a, const Term& s, Elem zero, const Budget& budget = {});
// r_1(x,y) = ... = r_n(x,y) = 0 iff x = y, and 0/cg_Q(x,y) = {0} iff x = y.
Report zero_regular_witnesses(const Algebra& a, const std::vector<Algebra>& K, const std::vector<Term>& rs,
                              Elem zero, const Budget& budget = {});
// u(x,x) = 0, u(x,0) = x, u(0,x) = 0, and x in 0/cg_Q(y,0) iff u(x,y) = 0.
Report u_term_check(const Algebra& a, const std::vector<Algebra>& K, const Term& u, Elem zero,
                    const Budget& budget = {});

// d(a,a,c) = c and d(a,b,c) = 0 for a != b; 0 is the value of the ground
// term zero (substituted for every variable) on each algebra.
Report is_fixedpoint_discriminator(const std::vector<Algebra>& algs, const Term& d, const Term& zero,
                                   const Budget& budget = {});

struct Conversion {
  Term term;
  Report report;
};
// d = p(z, p(x,y,z), z), verified as a fixedpoint discriminator.
Conversion fixedpoint_from_dual(const std::vector<Algebra>& algs, const Term& p, const Term& zero,
                                const Budget& budget = {});
// p = d(0, d(x,y,z), z), verified as a dual i-discriminator.
Conversion dual_from_fixedpoint(const std::vector<Algebra>& algs, const Term& d, const Term& zero,
                                const Budget& budget = {});
// d -> p -> d' with d' extensionally equal to d.
Report fixedpoint_roundtrip(const std::vector<Algebra>& algs, const Term& d, const Term& zero,
                            const Budget& budget = {});
// d = u(u(... u(z, r_n(x,y)) ..., r_2(x,y)), r_1(x,y)), verified on the
// Q-simple algebras among a and K. Throws PreconditionError unless
// u_term_check and zero_regular_witnesses pass.
Conversion fixedpoint_from_regularity(const Algebra& a, const std::vector<Algebra>& K, const Term& u,
                                      const std::vector<Term>& rs, Elem zero, const Budget& budget = {});

// 0-classes of the members of con(a) (K empty) or con_q(a, K). Checks that
// theta -> 0/theta is a lattice homomorphism onto the ideals ordered by
// inclusion and that 0/(theta v phi) = 0/(theta o phi). Throws
// PreconditionError("not subtractive") unless s is a subtraction term.
Report ideals(const Algebra& a, const std::vector<Algebra>& K, const Term& s, Elem zero, const Budget& budget = {});

// Sufficient condition: every fundamental op commutes with p on every
// member of K. A failure gives unknown ("inconclusive"), not no. Throws
// PreconditionError unless p is a dual i-discriminator on the Q-irreducibles.
Report primitive_by_commutation(const Quasivariety& Q, const Term& p);

}  // namespace quasilab
