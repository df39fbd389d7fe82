#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "quasilab/algebra.hpp"
#include "quasilab/budget.hpp"
#include "quasilab/deduction.hpp"
#include "quasilab/partition.hpp"
#include "quasilab/report.hpp"
#include "quasilab/term.hpp"

namespace quasilab {

// Generators of a subclone: term i is an op of arity arities[i], its
// variables numbered 0..arity-1.
struct CloneSpec {
  std::vector<Term> terms;
  std::vector<int> arities;
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> vars;
};

// `t1; t2; ...`; each term's variables are numbered by first occurrence.
// A term `f(v1,...,vk)` on distinct variables is named f, others t<i>.
CloneSpec parse_clone_spec(std::string_view text, const Signature& sig);
// All fundamental operations.
CloneSpec full_clone(const Signature& sig);
std::string print_clone_spec(const CloneSpec& C, const Signature& sig);

struct Reduct {
  Algebra base;
  CloneSpec spec;
  Algebra algebra;
};
Reduct reduct(const Algebra& a, const CloneSpec& C, const Budget& budget = {});

// a with one constant c_<label> adjoined per element.
Algebra with_constants(const Algebra& a);

struct TermClone {
  Algebra base;  // a, or a with constants adjoined
  std::uint32_t arity = 0;
  // tables[i][j]: value on the j-th assignment (lexicographic, variable 0
  // most significant).
  std::vector<std::vector<Elem>> tables;
  std::vector<Term> terms;  // over base.sig
  bool truncated = false;
  std::string tripped;  // "clone_size" or "closure_steps" when truncated
};
// k-ary term operations of a: closure of the projections (and constants)
// under the fundamental operations, capped at budget.clone_size members.
TermClone term_clone(const Algebra& a, std::uint32_t k, bool adjoin_constants, const Budget& budget = {});

Report c_structurally_complete(const Quasivariety& Q, const CloneSpec& C);
Report u_presentable(const Algebra& a, const std::vector<Algebra>& K, const Congruence& theta, const CloneSpec& C,
                     const Budget& budget = {});
Report prucnal_principal_check(const Algebra& a, const std::vector<Algebra>& K, const Term& t, const CloneSpec& C,
                               const Budget& budget = {});
// t_1 = t, t_{n+1} = t_n(x_1..x_n, y_1..y_n, t(x_{n+1}, y_{n+1}, z)), so
// t_n = t(x_1, y_1, t(x_2, y_2, ... t(x_n, y_n, z))). Variables: x_i is
// i-1, y_i is n+i-1, z is 2n.
Term prucnal_iterate(const Term& t, std::uint32_t n);
std::vector<std::string> prucnal_var_names(std::uint32_t n);
Report td_term_check(const Algebra& a, const std::vector<Algebra>& K, const Term& t, const Budget& budget = {});
// q commutes with the ternary t: t(x,y,q(z_1..z_k)) = q(t(x,y,z_1),..,t(x,y,z_k)).
Report commutes(const Algebra& a, const Term& t, const Term& q, const Budget& budget = {});

}  // namespace quasilab
