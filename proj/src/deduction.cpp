#include "quasilab/deduction.hpp"

#include <algorithm>

#include "detail.hpp"
#include "quasilab/congruence.hpp"
#include "quasilab/error.hpp"
#include "quasilab/morphisms.hpp"

namespace quasilab {

Quasivariety::Quasivariety(std::vector<Algebra> K, Budget budget) : K_(std::move(K)), budget_(budget) {
  if (K_.empty()) throw PreconditionError("empty generator class");
  for (const auto& B : K_) {
    if (!(B.sig == K_.front().sig)) throw PreconditionError("generator class members have different signatures");
    default_rank_ = std::max<std::uint32_t>(default_rank_, static_cast<std::uint32_t>(min_generators(B)));
  }
}

std::string Quasivariety::name() const {
  std::string s = "Q(";
  for (std::size_t i = 0; i < K_.size(); ++i) s += (i ? "," : "") + K_[i].name;
  return s + ")";
}

std::shared_ptr<const FreeAlgebra> Quasivariety::free_ptr(std::uint32_t n) const {
  auto it = cache_.find(n);
  if (it == cache_.end()) {
    auto F = std::make_shared<const FreeAlgebra>(free_algebra(K_, n, budget_));
    it = cache_.emplace(n, std::move(F)).first;
  }
  it->second->require_complete(budget_);
  return it->second;
}

const FreeAlgebra& Quasivariety::free(std::uint32_t n) const { return *free_ptr(n); }

namespace {

void require_signature(const Quasivariety& Q, const Signature& sig) {
  if (!(sig == Q.sig())) throw PreconditionError("signature mismatch");
}

json assignment_json(const Quasiequation& phi, std::span<const Elem> asg, const Algebra& a) {
  json j = json::object();
  for (std::uint32_t i = 0; i < phi.nvars; ++i) j[phi.vars[i]] = a.labels[asg[i]];
  return j;
}

Report base_report(const std::string& question, const Quasivariety& Q) {
  Report r;
  r.question = question;
  r.inputs = {{"K", detail::names_of(Q.K())}};
  return r;
}

void note_rank(Report& r, const Quasivariety& Q, std::uint32_t rank) {
  r.assumptions.push_back(kFreeRankBound);
  r.inputs["free_rank"] = rank;
  if (Q.rank_overridden() || rank != Q.default_rank()) r.note = "free rank overridden (default " +
                                                                std::to_string(Q.default_rank()) + ")";
}

}  // namespace

Report derivable(const Quasivariety& Q, const Quasiequation& phi) {
  Report r = base_report("derivable", Q);
  r.inputs["rule"] = print_quasiequation(phi, Q.sig());
  try {
    for (const auto& B : Q.K()) {
      auto res = check_quasiequation(B, phi, Q.budget());
      if (!res.holds) {
        r.answer = Answer::no;
        r.witness = {{"member", B.name}, {"assignment", assignment_json(phi, res.counterexample, B)}};
        return r;
      }
    }
    r.answer = Answer::yes;
    r.witness = {{"checked_members", detail::names_of(Q.K())}};
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

Report admissible(const Quasivariety& Q, const Quasiequation& phi, std::optional<std::uint32_t> rank) {
  Report r = base_report("admissible", Q);
  r.inputs["rule"] = print_quasiequation(phi, Q.sig());
  const auto n = rank ? *rank : Q.rank();
  note_rank(r, Q, n);
  try {
    const auto& F = Q.free(n);
    const auto& A = F.algebra(Q.budget());
    auto res = check_quasiequation(A, phi, Q.budget());
    if (res.holds) {
      r.answer = Answer::yes;
      r.witness = {{"free_size", F.size()}};
      return r;
    }
    std::vector<std::string> names;
    for (std::uint32_t i = 0; i < n; ++i) names.push_back(default_var_name(i));
    json sub = json::object();
    for (std::uint32_t i = 0; i < phi.nvars; ++i)
      sub[phi.vars[i]] = print_term(F.witness(res.counterexample[i]), Q.sig(), names);
    r.answer = Answer::no;
    r.witness = {{"substitution", sub}, {"free_size", F.size()}};
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

namespace {

// A Q-irreducible subalgebra of some member that homs into F do not
// separate; its characteristic quasiequation is admissible and not derivable.
json offending_rule(const Quasivariety& Q, const Algebra& Fa) {
  for (const auto& B : Q.K()) {
    if (B.size() > Q.budget().subalgebra_size) continue;
    auto subs = subalgebras_upto_iso(B, Q.budget());
    for (const auto& e : subs.entries) {
      auto S = subalgebra(B, e.carrier).algebra;
      S.name = B.name;
      if (S.size() < B.size()) {
        S.name += "[";
        for (std::size_t i = 0; i < e.carrier.size(); ++i) S.name += (i ? "," : "") + B.labels[e.carrier[i]];
        S.name += "]";
      }
      if (!q_irreducible(S, Q.K(), Q.budget()).yes()) continue;
      if (homs_separate_points(S, Fa, nullptr, Q.budget())) continue;
      auto ch = characteristic_quasiequation(Q, S);
      json j = {{"algebra", S.name}, {"carrier", e.carrier}, {"rule", print_quasiequation(ch, Q.sig())}};
      j["admissible"] = to_string(admissible(Q, ch).answer);
      j["derivable"] = to_string(derivable(Q, ch).answer);
      return j;
    }
  }
  return nullptr;
}

}  // namespace

Report structurally_complete(const Quasivariety& Q) {
  Report r = base_report("structurally_complete", Q);
  note_rank(r, Q, Q.rank());
  try {
    const auto& F = Q.free(Q.rank());
    const auto& Fa = F.algebra(Q.budget());
    for (const auto& B : Q.K()) {
      std::pair<Elem, Elem> pair;
      if (homs_separate_points(B, Fa, &pair, Q.budget())) continue;
      r.answer = Answer::no;
      r.witness = {{"member", B.name}, {"pair", {B.labels[pair.first], B.labels[pair.second]}}};
      try {
        r.witness["characteristic"] = offending_rule(Q, Fa);
      } catch (const BudgetExceeded&) {
        r.witness["characteristic"] = nullptr;
      }
      return r;
    }
    r.answer = Answer::yes;
    r.witness = {{"free_size", F.size()}};
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

Report in_structural_core(const Quasivariety& Q, const Algebra& b) {
  Report r = base_report("in_structural_core", Q);
  r.inputs["algebra"] = b.name;
  require_signature(Q, b.sig);
  note_rank(r, Q, Q.rank());
  try {
    const auto& Fa = Q.free(Q.rank()).algebra(Q.budget());
    std::pair<Elem, Elem> pair;
    if (homs_separate_points(b, Fa, &pair, Q.budget())) {
      r.answer = Answer::yes;
      r.witness = {{"separating_homs_into", Fa.name}};
    } else {
      r.answer = Answer::no;
      r.witness = {{"pair", {b.labels[pair.first], b.labels[pair.second]}}};
    }
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

Report exact(const Quasivariety& Q, const Algebra& b, std::uint32_t max_vars) {
  Report r = base_report("exact", Q);
  r.inputs["algebra"] = b.name;
  r.inputs["max_vars"] = max_vars;
  require_signature(Q, b.sig);
  try {
    // F_Q(omega) retracts onto F_Q(1) (send every variable to x), so a hom
    // from b into any free algebra yields one into F_Q(1).
    const auto& F1 = Q.free(1).algebra(Q.budget());
    if (!find_hom(b, F1, {}, Q.budget())) {
      r.answer = Answer::no;
      r.witness = {{"certificate", "no homomorphism into F(1)"}};
      return r;
    }
    auto core = in_structural_core(Q, b);
    if (core.no()) {
      r.answer = Answer::no;
      r.assumptions = core.assumptions;
      r.witness = {{"certificate", "homomorphisms into F(" + std::to_string(Q.rank()) + ") do not separate points"},
                   {"pair", core.witness["pair"]}};
      return r;
    }
    for (std::uint32_t m = 1; m <= max_vars; ++m) {
      const auto& F = Q.free(m);
      HomOptions o;
      o.filter = HomFilter::injective;
      if (auto h = find_hom(b, F.algebra(Q.budget()), o, Q.budget())) {
        std::vector<std::string> names;
        for (std::uint32_t i = 0; i < m; ++i) names.push_back(default_var_name(i));
        json image = json::object();
        for (Elem e = 0; e < b.size(); ++e) image[b.labels[e]] = print_term(F.witness((*h)[e]), Q.sig(), names);
        r.answer = Answer::yes;
        r.witness = {{"rank", m}, {"map", *h}, {"image", image}};
        return r;
      }
    }
    r.answer = Answer::unknown;
    r.budget = "max_vars";
    r.witness = {{"verdict", "no-up-to"}, {"max_vars", max_vars}};
    r.note = "no embedding into F(1..max_vars); bounded verdict, not a refutation";
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

Quasiequation characteristic_quasiequation(const Quasivariety& Q, const Algebra& b) {
  require_signature(Q, b.sig);
  auto irr = q_irreducible(b, Q.K(), Q.budget());
  if (irr.unknown()) throw BudgetExceeded(irr.budget, Q.budget().get(irr.budget));
  if (!irr.yes()) throw PreconditionError("not Q-irreducible: '" + b.name + "'");
  const auto n = b.size();
  std::vector<Term> x;
  std::vector<std::string> names;
  for (Elem e = 0; e < n; ++e) {
    x.push_back(variable(e));
    names.push_back("x" + std::to_string(e));
  }
  std::vector<Equation> premises;
  for (std::size_t k = 0; k < b.sig.size(); ++k) {
    const int ar = b.sig[k].arity;
    const auto total = checked_pow(n, ar, Q.budget().table_entries);
    std::vector<Elem> idx(ar, 0);
    for (std::uint64_t t = 0; t < total; ++t) {
      std::vector<Term> args;
      for (int i = 0; i < ar; ++i) args.push_back(x[idx[i]]);
      premises.push_back({apply(static_cast<int>(k), std::move(args)), x[b.tables[k][t]]});
      for (int i = ar - 1; i >= 0; --i) {
        if (++idx[i] < n) break;
        idx[i] = 0;
      }
    }
  }
  const auto& pair = irr.witness["pair"];
  return make_quasiequation(std::move(premises), {x[pair[0].get<Elem>()], x[pair[1].get<Elem>()]}, names);
}

}  // namespace quasilab
