#include "quasilab/clones.hpp"

#include <algorithm>
#include <set>

#include "detail.hpp"
#include "quasilab/congruence.hpp"
#include "quasilab/error.hpp"
#include "quasilab/morphisms.hpp"

namespace quasilab {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Is t = f(x_0, ..., x_{k-1}) for an op f?
bool is_basic(const Term& t) {
  if (t->is_var()) return false;
  for (std::size_t i = 0; i < t->args().size(); ++i)
    if (!t->args()[i]->is_var() || t->args()[i]->var() != i) return false;
  return true;
}

}  // namespace

CloneSpec parse_clone_spec(std::string_view text, const Signature& sig) {
  CloneSpec C;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    auto piece = trim(text.substr(start, end - start));
    start = end + 1;
    if (piece.empty()) continue;
    auto parsed = parse_term(piece, sig);
    const auto i = C.terms.size();
    std::string name = is_basic(parsed.term) ? sig[parsed.term->op()].name : "t" + std::to_string(i);
    if (std::find(C.names.begin(), C.names.end(), name) != C.names.end()) name = "t" + std::to_string(i);
    C.terms.push_back(parsed.term);
    C.arities.push_back(static_cast<int>(parsed.vars.size()));
    C.names.push_back(name);
    C.vars.push_back(parsed.vars);
  }
  if (C.terms.empty()) throw Error("empty clone specification");
  return C;
}

CloneSpec full_clone(const Signature& sig) {
  CloneSpec C;
  for (std::size_t k = 0; k < sig.size(); ++k) {
    std::vector<Term> args;
    std::vector<std::string> vars;
    for (int i = 0; i < sig[k].arity; ++i) {
      args.push_back(variable(static_cast<std::uint32_t>(i)));
      vars.push_back(default_var_name(static_cast<std::uint32_t>(i)));
    }
    C.terms.push_back(apply(static_cast<int>(k), std::move(args)));
    C.arities.push_back(sig[k].arity);
    C.names.push_back(sig[k].name);
    C.vars.push_back(vars);
  }
  return C;
}

std::string print_clone_spec(const CloneSpec& C, const Signature& sig) {
  std::string s;
  for (std::size_t i = 0; i < C.terms.size(); ++i) s += (i ? "; " : "") + print_term(C.terms[i], sig, C.vars[i]);
  return s;
}

Reduct reduct(const Algebra& a, const CloneSpec& C, const Budget& budget) {
  std::vector<OpSymbol> ops;
  std::vector<std::vector<Elem>> tables;
  for (std::size_t i = 0; i < C.terms.size(); ++i) {
    check_term(C.terms[i], a.sig);
    ops.push_back({C.names[i], C.arities[i]});
    tables.push_back(eval_table(C.terms[i], a, static_cast<std::uint32_t>(C.arities[i]), budget));
  }
  Reduct r{a, C, make_algebra(a.name + "^C", Signature(std::move(ops)), a.labels, std::move(tables))};
  return r;
}

Algebra with_constants(const Algebra& a) {
  auto ops = a.sig.ops();
  auto tables = a.tables;
  for (Elem e = 0; e < a.size(); ++e) {
    ops.push_back({"c_" + a.labels[e], 0});
    tables.push_back({e});
  }
  return make_algebra(a.name + "+c", Signature(std::move(ops)), a.labels, std::move(tables));
}

TermClone term_clone(const Algebra& a, std::uint32_t k, bool adjoin_constants, const Budget& budget) {
  TermClone out;
  out.base = adjoin_constants ? with_constants(a) : a;
  out.arity = k;
  Budget b = budget;
  b.free_size = budget.clone_size;
  auto F = free_algebra({out.base}, k, b);
  out.truncated = F.truncated();
  if (out.truncated) out.tripped = F.tripped_cap() == "free_size" ? "clone_size" : F.tripped_cap();
  out.tables.reserve(F.size());
  for (std::size_t e = 0; e < F.size(); ++e) {
    out.tables.push_back(F.values(e));
    out.terms.push_back(F.witness(e));
  }
  return out;
}

Report c_structurally_complete(const Quasivariety& Q, const CloneSpec& C) {
  Report r;
  r.question = "c_structurally_complete";
  r.inputs = {{"K", detail::names_of(Q.K())}, {"clone", print_clone_spec(C, Q.sig())}, {"free_rank", Q.rank()}};
  r.assumptions = {kFreeRankBound, kCloneCriterion};
  try {
    const auto& F = Q.free(Q.rank());
    auto RF = reduct(F.algebra(Q.budget()), C, Q.budget()).algebra;
    for (const auto& B : Q.K()) {
      auto RB = reduct(B, C, Q.budget()).algebra;
      std::pair<Elem, Elem> pair;
      if (homs_separate_points(RB, RF, &pair, Q.budget())) continue;
      r.answer = Answer::no;
      r.witness = {{"member", B.name}, {"pair", {B.labels[pair.first], B.labels[pair.second]}}};
      return r;
    }
    r.answer = Answer::yes;
    r.witness = {{"free_size", F.size()}};
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

Report u_presentable(const Algebra& a, const std::vector<Algebra>& K, const Congruence& theta, const CloneSpec& C,
                     const Budget& budget) {
  Report r;
  r.question = "u_presentable";
  r.inputs = {{"algebra", a.name}, {"K", detail::names_of(K)}, {"theta", to_json(theta)},
              {"clone", print_clone_spec(C, a.sig)}};
  try {
    auto L = con_q(a, K, budget);
    if (!L.find(theta)) throw PreconditionError("theta is not a Q-congruence of '" + a.name + "'");
    auto q = quotient(a, theta);
    auto RQ = reduct(q.algebra, C, budget).algebra;
    auto RA = reduct(a, C, budget).algebra;
    auto e = embeds(RQ, RA, budget);
    r.answer = e.answer;
    r.budget = e.budget;
    r.witness = e.witness;
    r.witness["quotient_map"] = q.map;
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

namespace {

std::vector<Elem> ternary_table(const Term& t, const Algebra& a, const Budget& budget) {
  if (var_bound(t) > 3) throw PreconditionError("expected a term in at most three variables");
  return eval_table(t, a, 3, budget);
}

}  // namespace

Report prucnal_principal_check(const Algebra& a, const std::vector<Algebra>& K, const Term& t, const CloneSpec& C,
                               const Budget& budget) {
  Report r;
  r.question = "prucnal_principal_check";
  r.inputs = {{"algebra", a.name}, {"K", detail::names_of(K)}, {"clone", print_clone_spec(C, a.sig)}};
  try {
    const auto n = a.size();
    auto tab = ternary_table(t, a, budget);
    auto L = con_q(a, K, budget);
    auto RA = reduct(a, C, budget).algebra;
    std::vector<Elem> sigma(n);
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y) {
        for (Elem c = 0; c < n; ++c) sigma[c] = tab[(x * n + y) * n + c];
        const auto& cgq = L[L.principal(x, y)];
        std::string failed;
        if (!is_homomorphism(RA, RA, sigma)) {
          failed = "not an endomorphism of the reduct";
        } else if (!(kernel(sigma) == cgq)) {
          failed = "kernel differs from the principal Q-congruence";
        }
        if (!failed.empty()) {
          r.answer = Answer::no;
          r.witness = {{"pair", {a.labels[x], a.labels[y]}},
                       {"failed", failed},
                       {"sigma", sigma},
                       {"kernel", to_json(kernel(sigma))},
                       {"cg_q", to_json(cgq)}};
          return r;
        }
      }
    r.answer = Answer::yes;
    r.witness = {{"pairs_checked", n * n}};
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

Term prucnal_iterate(const Term& t, std::uint32_t n) {
  if (n == 0) throw Error("iterate index must be at least 1");
  if (var_bound(t) > 3) throw PreconditionError("expected a ternary term");
  auto step = [&](std::uint32_t i, Term inner) {
    std::vector<Term> img{variable(i), variable(n + i), std::move(inner)};
    return substitute(t, img);
  };
  Term cur = step(n - 1, variable(2 * n));
  for (std::uint32_t i = n - 1; i-- > 0;) cur = step(i, cur);
  return cur;
}

std::vector<std::string> prucnal_var_names(std::uint32_t n) {
  std::vector<std::string> names;
  for (std::uint32_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  for (std::uint32_t i = 1; i <= n; ++i) names.push_back("y" + std::to_string(i));
  names.push_back("z");
  return names;
}

Report td_term_check(const Algebra& a, const std::vector<Algebra>& K, const Term& t, const Budget& budget) {
  Report r;
  r.question = "td_term";
  r.inputs = {{"algebra", a.name}, {"K", detail::names_of(K)}};
  r.assumptions.push_back(kTdReading);
  try {
    const auto n = a.size();
    auto tab = ternary_table(t, a, budget);
    auto at = [&](Elem x, Elem y, Elem z) { return tab[(x * n + y) * n + z]; };
    for (Elem x = 0; x < n; ++x)
      for (Elem z = 0; z < n; ++z)
        if (at(x, x, z) != z) {
          r.answer = Answer::no;
          r.witness = {{"failed", "t(x,x,z) = z"}, {"x", a.labels[x]}, {"z", a.labels[z]}};
          return r;
        }
    auto L = con_q(a, K, budget);
    bool edprc = true;
    json edprc_failure;
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y) {
        const auto& cgq = L[L.principal(x, y)];
        for (Elem c = 0; c < n; ++c)
          for (Elem d = 0; d < n; ++d) {
            const bool in = cgq.related(c, d);
            const bool eq = at(x, y, c) == at(x, y, d);
            if (in && !eq) {
              r.answer = Answer::no;
              r.witness = {{"failed", "(c,d) in cg_Q(a,b) implies t(a,b,c) = t(a,b,d)"},
                           {"a", a.labels[x]}, {"b", a.labels[y]}, {"c", a.labels[c]}, {"d", a.labels[d]}};
              return r;
            }
            if (!in && eq && edprc) {
              edprc = false;
              edprc_failure = {a.labels[x], a.labels[y], a.labels[c], a.labels[d]};
            }
          }
      }
    r.answer = Answer::yes;
    r.witness = {{"edprc", edprc}};
    if (!edprc) r.witness["edprc_failure"] = edprc_failure;
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

Report commutes(const Algebra& a, const Term& t, const Term& q, const Budget& budget) {
  Report r;
  r.question = "commutes";
  r.inputs = {{"algebra", a.name}};
  try {
    const auto n = a.size();
    const auto k = var_bound(q);
    auto tt = ternary_table(t, a, budget);
    auto qt = eval_table(q, a, k, budget);
    const auto total = checked_pow(n, static_cast<int>(k + 2), budget.assignments);
    if (total > budget.assignments) throw BudgetExceeded("assignments", budget.assignments);
    std::vector<Elem> asg(k + 2, 0);
    std::vector<Elem> inner(k);
    auto qidx = [&](std::span<const Elem> v) {
      std::size_t idx = 0;
      for (Elem e : v) idx = idx * n + e;
      return idx;
    };
    for (std::uint64_t i = 0; i < total; ++i) {
      const Elem x = asg[0], y = asg[1];
      std::span<const Elem> zs(asg.data() + 2, k);
      const Elem lhs = tt[(x * n + y) * n + qt[qidx(zs)]];
      for (std::uint32_t j = 0; j < k; ++j) inner[j] = tt[(x * n + y) * n + zs[j]];
      const Elem rhs = qt[qidx(inner)];
      if (lhs != rhs) {
        json tuple = json::array();
        for (Elem e : asg) tuple.push_back(a.labels[e]);
        r.answer = Answer::no;
        r.witness = {{"tuple", tuple}, {"lhs", a.labels[lhs]}, {"rhs", a.labels[rhs]}};
        return r;
      }
      for (int p = static_cast<int>(k) + 1; p >= 0; --p) {
        if (++asg[p] < n) break;
        asg[p] = 0;
      }
    }
    r.answer = Answer::yes;
    r.witness = {{"tuples_checked", total}};
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

}  // namespace quasilab
