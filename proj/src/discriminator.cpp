#include "quasilab/discriminator.hpp"

#include <algorithm>
#include <numeric>

#include "detail.hpp"
#include "quasilab/clones.hpp"
#include "quasilab/congruence.hpp"
#include "quasilab/error.hpp"
#include "quasilab/morphisms.hpp"
#include "quasilab/projectivity.hpp"

namespace quasilab {

namespace {

const Term x = variable(0);
const Term y = variable(1);
const Term z = variable(2);

std::vector<Elem> table_of(const Term& t, const Algebra& a, std::uint32_t arity, const Budget& budget) {
  if (var_bound(t) > arity) throw PreconditionError("expected a term in at most " + std::to_string(arity) +
                                                    " variables");
  check_term(t, a.sig);
  return eval_table(t, a, arity, budget);
}

// Table of a ternary term with index helper.
struct T3 {
  std::vector<Elem> tab;
  std::size_t n;
  Elem operator()(Elem a, Elem b, Elem c) const { return tab[(a * n + b) * n + c]; }
};

T3 ternary(const Term& t, const Algebra& a, const Budget& budget) { return {table_of(t, a, 3, budget), a.size()}; }

struct T2 {
  std::vector<Elem> tab;
  std::size_t n;
  Elem operator()(Elem a, Elem b) const { return tab[a * n + b]; }
};

T2 binary(const Term& t, const Algebra& a, const Budget& budget) { return {table_of(t, a, 2, budget), a.size()}; }

json labels(const Algebra& a, std::initializer_list<Elem> es) {
  json j = json::array();
  for (Elem e : es) j.push_back(a.labels[e]);
  return j;
}

json labels(const Algebra& a, std::span<const Elem> es) {
  json j = json::array();
  for (Elem e : es) j.push_back(a.labels[e]);
  return j;
}

Report make_report(std::string question, const std::vector<Algebra>& algs) {
  Report r;
  r.question = std::move(question);
  r.inputs = {{"algebras", detail::names_of(algs)}};
  return r;
}

Report fail(Report r, const Algebra& a, std::string clause, json tuple) {
  r.answer = Answer::no;
  r.witness = {{"algebra", a.name}, {"failed", std::move(clause)}, {"tuple", std::move(tuple)}};
  return r;
}

// Value of a ground-in-effect term: every variable mapped to the same
// element, and the result checked to be constant.
Elem constant_value(const Term& zero, const Algebra& a, const Budget& budget) {
  const auto k = std::max<std::uint32_t>(1, var_bound(zero));
  check_term(zero, a.sig);
  std::vector<Elem> asg(k);
  std::optional<Elem> v;
  for (Elem e = 0; e < a.size(); ++e) {
    std::fill(asg.begin(), asg.end(), e);
    const Elem w = eval(zero, a, asg);
    if (v && *v != w) throw PreconditionError("zero term is not constant on '" + a.name + "'");
    v = w;
  }
  (void)budget;
  if (!v) throw PreconditionError("empty algebra");
  return *v;
}

// zero with every variable replaced by v.
Term zero_at(const Term& zero, const Term& v) {
  std::vector<Term> img(std::max<std::uint32_t>(1, var_bound(zero)), v);
  return substitute(zero, img);
}

// The 0-class of theta.
std::vector<Elem> zero_class(const Congruence& theta, Elem zero) {
  std::vector<Elem> out;
  for (Elem e = 0; e < theta.size(); ++e)
    if (theta.related(zero, e)) out.push_back(e);
  return out;
}

}  // namespace

Report is_dual_i_discriminator(const std::vector<Algebra>& algs, const Term& p, const Budget& budget) {
  Report r = make_report("dual_i_discriminator", algs);
  try {
    json pis = json::object();
    for (const auto& a : algs) {
      auto P = ternary(p, a, budget);
      const auto n = a.size();
      for (Elem u = 0; u < n; ++u)
        for (Elem v = 0; v < n; ++v)
          for (Elem c = 0; c < n; ++c) {
            if (u != v && P(u, v, c) != c) return fail(r, a, "p(a,b,c) = c for a != b", labels(a, {u, v, c}));
            if (u == v && P(u, u, c) != P(u, u, 0))
              return fail(r, a, "p(a,a,c) constant in c", labels(a, {u, u, c}));
          }
      std::vector<Elem> pi(n);
      for (Elem u = 0; u < n; ++u) pi[u] = P(u, u, u);
      for (Elem u = 0; u < n; ++u)
        if (pi[pi[u]] != pi[u]) return fail(r, a, "pi(pi(a)) = pi(a)", labels(a, {u}));
      json pj = json::object();
      for (Elem u = 0; u < n; ++u) pj[a.labels[u]] = a.labels[pi[u]];
      pis[a.name] = pj;
    }
    r.answer = Answer::yes;
    r.witness = {{"pi", pis}};
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

Report is_rpip_witness(const std::vector<Algebra>& algs, const Term& p, const Term& q, const Budget& budget) {
  Report r = make_report("rpip", algs);
  try {
    std::size_t checked = 0;
    for (const auto& a : algs) {
      auto P = table_of(p, a, 4, budget);
      auto Q = table_of(q, a, 4, budget);
      const auto n = a.size();
      for (Elem u = 0; u < n; ++u)
        for (Elem v = 0; v < n; ++v)
          for (Elem c = 0; c < n; ++c)
            for (Elem d = 0; d < n; ++d) {
              const auto i = ((u * n + v) * n + c) * n + d;
              const bool eq = P[i] == Q[i];
              ++checked;
              if (eq != (u == v || c == d)) {
                r = fail(r, a, "p(a,b,c,d) = q(a,b,c,d) iff a = b or c = d", labels(a, {u, v, c, d}));
                r.witness["p"] = a.labels[P[i]];
                r.witness["q"] = a.labels[Q[i]];
                return r;
              }
            }
    }
    r.answer = Answer::yes;
    r.witness = {{"tuples_checked", checked}};
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

Report is_rtpip_witness(const std::vector<Algebra>& algs, const Term& p, const Budget& budget) {
  Report r = make_report("rtpip", algs);
  try {
    std::size_t checked = 0;
    for (const auto& a : algs) {
      auto P = ternary(p, a, budget);
      const auto n = a.size();
      for (Elem u = 0; u < n; ++u)
        for (Elem v = 0; v < n; ++v)
          for (Elem c = 0; c < n; ++c)
            for (Elem d = 0; d < n; ++d) {
              ++checked;
              if ((P(u, v, c) == P(u, v, d)) != (u == v || c == d))
                return fail(r, a, "p(a,b,c) = p(a,b,d) iff a = b or c = d", labels(a, {u, v, c, d}));
            }
    }
    r.answer = Answer::yes;
    r.witness = {{"tuples_checked", checked}};
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

JonssonTerms jonsson_terms(const Term& p) {
  if (var_bound(p) > 3) throw PreconditionError("expected a ternary term");
  auto sub = [&](Term a, Term b, Term c) {
    std::vector<Term> img{std::move(a), std::move(b), std::move(c)};
    return substitute(p, img);
  };
  return {sub(sub(x, y, z), y, x), sub(sub(x, y, y), z, z)};
}

Report verify_jonsson(const std::vector<Algebra>& algs, const JonssonTerms& t, const Budget& budget) {
  Report r = make_report("jonsson", algs);
  try {
    for (const auto& a : algs) {
      auto t1 = ternary(t.t1, a, budget);
      auto t2 = ternary(t.t2, a, budget);
      const auto n = a.size();
      for (Elem u = 0; u < n; ++u)
        for (Elem v = 0; v < n; ++v) {
          if (t1(u, v, u) != u) return fail(r, a, "t1(x,y,x) = x", labels(a, {u, v}));
          if (t2(u, v, u) != u) return fail(r, a, "t2(x,y,x) = x", labels(a, {u, v}));
          if (t1(u, u, v) != u) return fail(r, a, "t1(x,x,z) = x", labels(a, {u, v}));
          if (t2(u, u, v) != v) return fail(r, a, "t2(x,x,z) = z", labels(a, {u, v}));
          if (t1(u, v, v) != t2(u, v, v)) return fail(r, a, "t1(x,z,z) = t2(x,z,z)", labels(a, {u, v}));
        }
    }
    r.answer = Answer::yes;
    r.witness = {{"equations", 4}};
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

Synthesis synth_dual_i_discriminator(const std::vector<Algebra>& irreducibles, const Term& p, const Budget& budget) {
  auto rt = is_rtpip_witness(irreducibles, p, budget);
  if (rt.unknown()) throw BudgetExceeded(rt.budget, budget.get(rt.budget));
  if (!rt.yes()) throw PreconditionError("not an RTPIP witness: " + rt.witness.dump());

  // For a != b, z -> p(a,b,z) is a permutation; n is the least common
  // exponent returning all of them to the identity.
  std::uint64_t bound = 1;
  std::vector<T3> tabs;
  for (const auto& a : irreducibles) {
    tabs.push_back(ternary(p, a, budget));
    const auto n = a.size();
    for (Elem u = 0; u < n; ++u)
      for (Elem v = 0; v < n; ++v) {
        if (u == v) continue;
        std::vector<bool> seen(n, false);
        for (Elem c = 0; c < n; ++c) {
          if (seen[c]) continue;
          std::uint64_t len = 0;
          for (Elem e = c; !seen[e]; e = tabs.back()(u, v, e), ++len) seen[e] = true;
          bound = std::lcm(bound, len);
        }
      }
  }
  std::uint32_t n = 1;
  for (;; ++n) {
    bool ok = true;
    for (std::size_t i = 0; i < irreducibles.size() && ok; ++i) {
      const auto m = irreducibles[i].size();
      for (Elem u = 0; u < m && ok; ++u)
        for (Elem v = 0; v < m && ok; ++v) {
          if (u == v) continue;
          for (Elem c = 0; c < m && ok; ++c) {
            Elem e = c;
            for (std::uint32_t k = 0; k < n; ++k) e = tabs[i](u, v, e);
            ok = e == c;
          }
        }
    }
    if (ok) break;
    if (n >= bound) throw Error("no exponent found below the cycle bound");
  }

  auto check_nodes = [&](const Term& t) {
    const Term roots[] = {t};
    if (dag_size(roots) > budget.term_nodes) throw BudgetExceeded("term_nodes", budget.term_nodes);
  };
  Term pn = p;
  for (std::uint32_t k = 1; k < n; ++k) {
    std::vector<Term> img{x, y, pn};
    pn = substitute(p, img);
    check_nodes(pn);
  }

  // tau(a) = p_n(a,a,a); least L with tau^{2L} = tau^L on every algebra.
  std::vector<std::vector<Elem>> tau;
  for (const auto& a : irreducibles) {
    auto P = ternary(pn, a, budget);
    std::vector<Elem> t(a.size());
    for (Elem u = 0; u < a.size(); ++u) t[u] = P(u, u, u);
    tau.push_back(std::move(t));
  }
  auto power = [](const std::vector<Elem>& f, std::uint32_t k, Elem e) {
    for (std::uint32_t i = 0; i < k; ++i) e = f[e];
    return e;
  };
  std::uint32_t L = 1;
  for (;; ++L) {
    bool ok = true;
    for (const auto& t : tau)
      for (Elem u = 0; u < t.size() && ok; ++u) ok = power(t, 2 * L, u) == power(t, L, u);
    if (ok) break;
  }

  Term q = z;
  for (std::uint32_t k = 0; k < L; ++k) {
    std::vector<Term> xyx{x, y, x}, xyy{x, y, y};
    std::vector<Term> img{substitute(q, xyx), substitute(q, xyy), q};
    q = substitute(pn, img);
    check_nodes(q);
  }

  Synthesis s{q, n, L, is_dual_i_discriminator(irreducibles, q, budget)};
  s.certificate.question = "synth_dual_i_discriminator";
  s.certificate.witness["n"] = n;
  s.certificate.witness["L"] = L;
  const Term roots[] = {q};
  s.certificate.witness["term_nodes"] = dag_size(roots);
  if (!irreducibles.empty()) s.certificate.witness["d"] = print_term(q, irreducibles.front().sig);
  return s;
}

Report edprc_check(const Algebra& a, const std::vector<Algebra>& K, const Term& p, const Budget& budget) {
  Report r;
  r.question = "edprc";
  r.inputs = {{"algebra", a.name}, {"K", detail::names_of(K)}};
  try {
    auto P = ternary(p, a, budget);
    auto L = con_q(a, K, budget);
    const auto n = a.size();
    std::size_t failures = 0;
    json first;
    for (Elem u = 0; u < n; ++u)
      for (Elem v = 0; v < n; ++v) {
        const auto& theta = L[L.principal(u, v)];
        for (Elem c = 0; c < n; ++c)
          for (Elem d = 0; d < n; ++d) {
            bool rhs = true;
            for (Elem w = 0; w < n && rhs; ++w) rhs = P(c, d, w) == P(c, d, P(u, v, w));
            if (rhs != theta.related(c, d)) {
              if (!failures) first = {{"a", a.labels[u]}, {"b", a.labels[v]}, {"c", a.labels[c]},
                                      {"d", a.labels[d]}, {"in_cg_q", theta.related(c, d)}};
              ++failures;
            }
          }
      }
    r.answer = failures ? Answer::no : Answer::yes;
    r.witness = {{"failures", failures}};
    if (failures) r.witness["first"] = first;
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

Elem default_zero(const Algebra& a) {
  for (std::size_t k = 0; k < a.sig.size(); ++k)
    if (a.sig[k].arity == 0) return a.tables[k][0];
  throw PreconditionError("no constant in the signature of '" + a.name + "'; designate a zero");
}

Term constant_term(const Algebra& a, Elem e) {
  for (std::size_t k = 0; k < a.sig.size(); ++k)
    if (a.sig[k].arity == 0 && a.tables[k][0] == e) return apply(static_cast<int>(k), {});
  for (int ar : {2, 1}) {
    for (std::size_t k = 0; k < a.sig.size(); ++k) {
      if (a.sig[k].arity != ar) continue;
      std::vector<Term> args(ar, x);
      auto t = apply(static_cast<int>(k), std::move(args));
      bool ok = true;
      for (Elem u = 0; u < a.size() && ok; ++u) {
        const Elem asg[] = {u};
        ok = eval(t, a, asg) == e;
      }
      if (ok) return t;
    }
  }
  throw PreconditionError("no term of the form c, f(x,x) or f(x) is constantly '" + a.labels[e] + "'");
}

Report is_subtraction_term(const Algebra& a, const Term& s, Elem zero, const Budget& budget) {
  Report r = make_report("subtraction", {a});
  r.inputs["zero"] = a.labels[zero];
  try {
    auto S = binary(s, a, budget);
    for (Elem u = 0; u < a.size(); ++u) {
      if (S(u, u) != zero) return fail(r, a, "s(x,x) = 0", labels(a, {u}));
      if (S(u, zero) != u) return fail(r, a, "s(x,0) = x", labels(a, {u}));
    }
    r.answer = Answer::yes;
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

Report zero_regular_witnesses(const Algebra& a, const std::vector<Algebra>& K, const std::vector<Term>& rs,
                              Elem zero, const Budget& budget) {
  Report r = make_report("zero_regular", {a});
  r.inputs["K"] = detail::names_of(K);
  r.inputs["zero"] = a.labels[zero];
  try {
    if (rs.empty()) throw PreconditionError("no regularity terms");
    std::vector<T2> R;
    for (const auto& t : rs) R.push_back(binary(t, a, budget));
    auto L = con_q(a, K, budget);
    const auto n = a.size();
    for (Elem u = 0; u < n; ++u)
      for (Elem v = 0; v < n; ++v) {
        bool all_zero = true;
        for (const auto& t : R) all_zero = all_zero && t(u, v) == zero;
        if (all_zero != (u == v)) return fail(r, a, "r_i(x,y) = 0 for all i iff x = y", labels(a, {u, v}));
        const auto cls = zero_class(L[L.principal(u, v)], zero);
        if ((cls.size() == 1) != (u == v)) {
          r = fail(r, a, "0/cg_Q(x,y) = {0} iff x = y", labels(a, {u, v}));
          r.witness["zero_class"] = labels(a, cls);
          return r;
        }
      }
    r.answer = Answer::yes;
    r.witness = {{"terms", rs.size()}};
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

Report u_term_check(const Algebra& a, const std::vector<Algebra>& K, const Term& u, Elem zero, const Budget& budget) {
  Report r = make_report("u_term", {a});
  r.inputs["K"] = detail::names_of(K);
  r.inputs["zero"] = a.labels[zero];
  r.assumptions.push_back(kIdealsFromSubtraction);
  try {
    auto U = binary(u, a, budget);
    auto L = con_q(a, K, budget);
    const auto n = a.size();
    for (Elem v = 0; v < n; ++v) {
      if (U(v, v) != zero) return fail(r, a, "u(x,x) = 0", labels(a, {v}));
      if (U(v, zero) != v) return fail(r, a, "u(x,0) = x", labels(a, {v}));
      if (U(zero, v) != zero) return fail(r, a, "u(0,x) = 0", labels(a, {v}));
    }
    for (Elem b = 0; b < n; ++b) {
      const auto& theta = L[L.principal(b, zero)];
      for (Elem v = 0; v < n; ++v)
        if (theta.related(zero, v) != (U(v, b) == zero))
          return fail(r, a, "x in 0/cg_Q(y,0) iff u(x,y) = 0", labels(a, {v, b}));
    }
    r.answer = Answer::yes;
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

Report is_fixedpoint_discriminator(const std::vector<Algebra>& algs, const Term& d, const Term& zero,
                                   const Budget& budget) {
  Report r = make_report("fixedpoint_discriminator", algs);
  try {
    json zeros = json::object();
    for (const auto& a : algs) {
      const Elem o = constant_value(zero, a, budget);
      zeros[a.name] = a.labels[o];
      auto D = ternary(d, a, budget);
      const auto n = a.size();
      for (Elem u = 0; u < n; ++u)
        for (Elem v = 0; v < n; ++v)
          for (Elem c = 0; c < n; ++c) {
            if (u == v && D(u, v, c) != c) return fail(r, a, "d(a,a,c) = c", labels(a, {u, v, c}));
            if (u != v && D(u, v, c) != o) return fail(r, a, "d(a,b,c) = 0 for a != b", labels(a, {u, v, c}));
          }
    }
    r.answer = Answer::yes;
    r.witness = {{"zero", zeros}};
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

Conversion fixedpoint_from_dual(const std::vector<Algebra>& algs, const Term& p, const Term& zero,
                                const Budget& budget) {
  if (var_bound(p) > 3) throw PreconditionError("expected a ternary term");
  std::vector<Term> inner{z, p, z};
  Term d = substitute(p, inner);
  return {d, is_fixedpoint_discriminator(algs, d, zero, budget)};
}

Conversion dual_from_fixedpoint(const std::vector<Algebra>& algs, const Term& d, const Term& zero,
                                const Budget& budget) {
  if (var_bound(d) > 3) throw PreconditionError("expected a ternary term");
  std::vector<Term> img{zero_at(zero, z), d, z};
  Term p = substitute(d, img);
  return {p, is_dual_i_discriminator(algs, p, budget)};
}

Report fixedpoint_roundtrip(const std::vector<Algebra>& algs, const Term& d, const Term& zero, const Budget& budget) {
  Report r = make_report("fixedpoint_roundtrip", algs);
  try {
    auto role = is_fixedpoint_discriminator(algs, d, zero, budget);
    if (!role.yes()) {
      r.answer = role.answer;
      r.budget = role.budget;
      r.witness = {{"fixedpoint", role.witness}};
      return r;
    }
    auto p = dual_from_fixedpoint(algs, d, zero, budget);
    auto d2 = fixedpoint_from_dual(algs, p.term, zero, budget);
    r.witness = {{"p", p.report.to_json()}, {"d2", d2.report.to_json()}};
    for (const auto& a : algs) {
      if (ternary(d, a, budget).tab != ternary(d2.term, a, budget).tab) {
        r.answer = Answer::no;
        r.witness["differs_on"] = a.name;
        return r;
      }
    }
    r.answer = p.report.yes() && d2.report.yes() ? Answer::yes : Answer::no;
    if (!algs.empty()) {
      r.witness["p_term"] = print_term(p.term, algs.front().sig);
      r.witness["d2_term"] = print_term(d2.term, algs.front().sig);
    }
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

Conversion fixedpoint_from_regularity(const Algebra& a, const std::vector<Algebra>& K, const Term& u,
                                      const std::vector<Term>& rs, Elem zero, const Budget& budget) {
  auto ut = u_term_check(a, K, u, zero, budget);
  if (!ut.yes()) throw PreconditionError("u-term check failed: " + ut.witness.dump());
  auto zr = zero_regular_witnesses(a, K, rs, zero, budget);
  if (!zr.yes()) throw PreconditionError("regularity check failed: " + zr.witness.dump());
  if (var_bound(u) > 2) throw PreconditionError("expected a binary u");
  Term d = z;
  for (auto it = rs.rbegin(); it != rs.rend(); ++it) {
    if (var_bound(*it) > 2) throw PreconditionError("expected binary regularity terms");
    // u(c, r) is c when r = 0 and 0 otherwise on simple members.
    std::vector<Term> img{d, *it};
    d = substitute(u, img);
  }
  std::vector<Algebra> simple;
  auto consider = [&](const Algebra& b) {
    if (!(b.sig == a.sig)) return;
    if (con_q(b, K, budget).size() == 2) simple.push_back(b);
  };
  consider(a);
  for (const auto& b : K)
    if (b.name != a.name) consider(b);
  auto zero_term = constant_term(a, zero);
  Conversion c{d, is_fixedpoint_discriminator(simple, d, zero_term, budget)};
  c.report.question = "fixedpoint_from_regularity";
  c.report.witness["d"] = print_term(d, a.sig);
  return c;
}

Report ideals(const Algebra& a, const std::vector<Algebra>& K, const Term& s, Elem zero, const Budget& budget) {
  auto st = is_subtraction_term(a, s, zero, budget);
  if (st.unknown()) throw BudgetExceeded(st.budget, budget.get(st.budget));
  if (!st.yes()) throw PreconditionError("not subtractive: " + st.witness.dump());
  Report r;
  r.question = "ideals";
  r.inputs = {{"algebra", a.name}, {"K", detail::names_of(K)}, {"zero", a.labels[zero]},
              {"relative", !K.empty()}};
  r.assumptions.push_back(kIdealsFromSubtraction);
  try {
    auto L = K.empty() ? con_all(a, budget) : con_q(a, K, budget);
    const auto m = L.size();
    std::vector<std::vector<Elem>> cls(m);
    for (std::size_t i = 0; i < m; ++i) cls[i] = zero_class(L[i], zero);
    auto distinct = cls;
    std::sort(distinct.begin(), distinct.end(),
              [](const auto& p, const auto& q) { return p.size() != q.size() ? p.size() < q.size() : p < q; });
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    auto subset = [](const std::vector<Elem>& p, const std::vector<Elem>& q) {
      return std::includes(q.begin(), q.end(), p.begin(), p.end());
    };
    // Least ideal containing both, if the inclusion order has one.
    auto ideal_join = [&](const std::vector<Elem>& p, const std::vector<Elem>& q) -> std::optional<std::vector<Elem>> {
      std::optional<std::vector<Elem>> best;
      for (const auto& c : distinct)
        if (subset(p, c) && subset(q, c) && (!best || subset(c, *best))) best = c;
      if (best)
        for (const auto& c : distinct)
          if (subset(p, c) && subset(q, c) && !subset(*best, c)) return std::nullopt;
      return best;
    };
    std::string failed;
    json failure;
    for (std::size_t i = 0; i < m && failed.empty(); ++i)
      for (std::size_t j = 0; j < m && failed.empty(); ++j) {
        std::vector<Elem> inter;
        std::set_intersection(cls[i].begin(), cls[i].end(), cls[j].begin(), cls[j].end(), std::back_inserter(inter));
        const auto& jn = cls[L.join(i, j)];
        std::vector<Elem> comp;
        for (Elem v = 0; v < a.size(); ++v) {
          bool in = false;
          for (Elem w = 0; w < a.size() && !in; ++w) in = L[i].related(zero, w) && L[j].related(w, v);
          if (in) comp.push_back(v);
        }
        if (cls[L.meet(i, j)] != inter) {
          failed = "0/(theta ^ phi) = 0/theta n 0/phi";
        } else if (ideal_join(cls[i], cls[j]) != jn) {
          failed = "0/(theta v phi) is the join of the ideals";
        } else if (jn != comp) {
          failed = "0/(theta v phi) = 0/(theta o phi)";
        }
        if (!failed.empty()) failure = {{"theta", to_json(L[i])}, {"phi", to_json(L[j])}};
      }
    json list = json::array();
    for (const auto& c : distinct) list.push_back(labels(a, c));
    r.witness = {{"ideals", list}, {"congruences", m}, {"injective", distinct.size() == m}};
    if (!failed.empty()) {
      r.answer = Answer::no;
      r.witness["failed"] = failed;
      r.witness["pair"] = failure;
    } else {
      r.answer = Answer::yes;
    }
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

Report primitive_by_commutation(const Quasivariety& Q, const Term& p) {
  Report r;
  r.question = "primitive_by_commutation";
  r.inputs = {{"K", detail::names_of(Q.K())}, {"p", print_term(p, Q.sig())}};
  try {
    std::vector<Algebra> irr;
    for (auto& i : q_irreducibles(Q)) irr.push_back(std::move(i.algebra));
    auto di = is_dual_i_discriminator(irr, p, Q.budget());
    if (di.unknown()) throw BudgetExceeded(di.budget, Q.budget().get(di.budget));
    if (!di.yes()) throw PreconditionError("not a dual i-discriminator on the Q-irreducibles: " + di.witness.dump());
    json checked = json::array();
    for (std::size_t k = 0; k < Q.sig().size(); ++k) {
      std::vector<Term> args;
      for (int i = 0; i < Q.sig()[k].arity; ++i) args.push_back(variable(static_cast<std::uint32_t>(i)));
      auto f = apply(static_cast<int>(k), std::move(args));
      for (const auto& B : Q.K()) {
        auto c = commutes(B, p, f, Q.budget());
        if (c.unknown()) throw BudgetExceeded(c.budget, Q.budget().get(c.budget));
        checked.push_back({{"op", Q.sig()[k].name}, {"member", B.name}, {"commutes", c.yes()}});
        if (c.no()) {
          r.answer = Answer::unknown;
          r.budget = "inconclusive";
          r.note = "an operation does not commute with p; the criterion is sufficient only, so this is not a "
                   "refutation of primitivity";
          r.witness = {{"op", Q.sig()[k].name}, {"member", B.name}, {"counterexample", c.witness},
                       {"checked", checked}};
          return r;
        }
      }
    }
    r.answer = Answer::yes;
    r.witness = {{"checked", checked}, {"irreducibles", detail::names_of(irr)}};
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

}  // namespace quasilab
