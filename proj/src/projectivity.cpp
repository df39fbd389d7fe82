#include "quasilab/projectivity.hpp"

#include <algorithm>
#include <set>

#include "detail.hpp"
#include "quasilab/congruence.hpp"
#include "quasilab/error.hpp"
#include "quasilab/morphisms.hpp"

namespace quasilab {

namespace {

void require_member(const Quasivariety& Q, const Algebra& b) {
  if (!(b.sig == Q.sig())) throw PreconditionError("signature mismatch");
  if (!in_isp(b, Q.K(), Q.budget())) throw PreconditionError("not a Q-member: '" + b.name + "' is not in ISP(K)");
}

json labels_of(const Algebra& b, std::span<const Elem> elems) {
  json j = json::array();
  for (Elem e : elems) j.push_back(b.labels[e]);
  return j;
}

// Generating tuples of b of length g, in lexicographic order.
std::vector<std::vector<Elem>> generating_tuples(const Algebra& b, std::uint32_t g) {
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> t(g, 0);
  const auto n = b.size();
  while (true) {
    if (generated_subalgebra(b, t).size() == n) out.push_back(t);
    int i = static_cast<int>(g) - 1;
    while (i >= 0 && ++t[i] == n) t[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

}  // namespace

Report projective(const Quasivariety& Q, const Algebra& b) {
  Report r;
  r.question = "projective";
  r.inputs = {{"K", detail::names_of(Q.K())}, {"algebra", b.name}};
  require_member(Q, b);
  const auto g = static_cast<std::uint32_t>(min_generators(b));
  r.inputs["free_rank"] = g;
  try {
    const auto& F = Q.free(g);
    auto ret = retracts(F.algebra(Q.budget()), b, Q.budget());
    r.answer = ret.answer;
    r.witness = ret.witness;
    r.witness["free_size"] = F.size();
    r.budget = ret.budget;
    r.note = ret.note;
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

Report weakly_projective(const Quasivariety& Q, const Algebra& b, std::optional<std::uint32_t> rank) {
  Report r;
  r.question = "weakly_projective";
  r.inputs = {{"K", detail::names_of(Q.K())}, {"algebra", b.name}};
  r.assumptions.push_back(kWitnessGeneratorBound);
  require_member(Q, b);
  const auto g = rank ? *rank : static_cast<std::uint32_t>(min_generators(b));
  r.inputs["free_rank"] = g;
  try {
    const auto& F = Q.free(g);
    const auto& Fa = F.algebra(Q.budget());
    const auto n = Fa.size();

    // Kernels of the surjections F ->> b, one per generating tuple.
    std::vector<Congruence> surj;
    std::vector<std::vector<Elem>> surj_images;
    for (const auto& t : generating_tuples(b, g)) {
      auto k = kernel(eval_hom(F, b, t, Q.budget(), false));
      if (std::find(surj.begin(), surj.end(), k) == surj.end()) {
        surj.push_back(std::move(k));
        surj_images.push_back(t);
      }
    }

    std::size_t checked = 0;
    auto test = [&](const Congruence& theta) -> bool {
      std::size_t via = surj.size();
      for (std::size_t i = 0; i < surj.size() && via == surj.size(); ++i)
        if (theta.leq(surj[i])) via = i;
      if (via == surj.size()) return true;
      ++checked;
      auto q = quotient(Fa, theta, false);
      q.algebra.name = "F" + std::to_string(g) + "/theta";
      auto e = embeds(b, q.algebra, Q.budget());
      if (e.unknown()) throw BudgetExceeded(e.budget, Q.budget().get(e.budget));
      if (e.yes()) return true;
      r.answer = Answer::no;
      r.witness = {{"theta", to_json(theta)},
                   {"quotient", print_algebra(q.algebra)},
                   {"surjection_generator_images", labels_of(b, surj_images[via])},
                   {"free_size", n}};
      return false;
    };

    // The identity (F itself) first: it is the most frequent counterexample.
    if (!test(Congruence::identity(n))) return r;

    std::vector<Congruence> coord;
    for (std::size_t c = 0; c < F.coordinates().size(); ++c) {
      std::vector<Elem> lab(n);
      for (std::size_t e = 0; e < n; ++e) lab[e] = F.value(e, c);
      auto k = Congruence::from_labels(lab);
      if (std::find(coord.begin(), coord.end(), k) == coord.end()) coord.push_back(std::move(k));
    }
    std::set<Congruence> seen{Congruence::all(n)};
    std::vector<Congruence> queue{Congruence::all(n)};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (const auto& k : coord) {
        auto m = meet(queue[i], k);
        if (seen.insert(m).second) {
          if (seen.size() > Q.budget().lattice_size) throw BudgetExceeded("lattice_size", Q.budget().lattice_size);
          queue.push_back(std::move(m));
        }
      }
    }
    std::stable_sort(queue.begin(), queue.end(),
                     [](const Congruence& x, const Congruence& y) { return x.num_blocks() > y.num_blocks(); });
    for (const auto& theta : queue) {
      if (theta.is_identity()) continue;
      if (!test(theta)) return r;
    }
    r.answer = Answer::yes;
    r.witness = {{"con_q_size", queue.size()}, {"quotients_checked", checked}, {"surjection_kernels", surj.size()},
                 {"free_size", n}};
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

Report endo_kernel_check(const Algebra& a, const std::vector<Algebra>& K, const Budget& budget) {
  Report r;
  r.question = "endo_kernel_check";
  r.inputs = {{"algebra", a.name}, {"K", detail::names_of(K)}};
  try {
    auto L = con_q(a, K, budget);
    auto endos = homs(a, a, {}, budget);
    json per = json::array();
    bool all = true;
    for (const auto& theta : L.members()) {
      json entry = {{"theta", to_json(theta)}, {"endomorphism", nullptr}, {"idempotent", nullptr}};
      for (const auto& f : endos) {
        if (!(kernel(f) == theta)) continue;
        if (entry["endomorphism"].is_null()) entry["endomorphism"] = f;
        bool idem = true;
        for (Elem x = 0; x < a.size() && idem; ++x) idem = f[f[x]] == f[x];
        if (idem) {
          entry["idempotent"] = f;
          break;
        }
      }
      if (entry["endomorphism"].is_null()) all = false;
      per.push_back(std::move(entry));
    }
    r.answer = all ? Answer::yes : Answer::no;
    r.witness = {{"congruences", per}, {"endomorphisms", endos.size()}};
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

std::vector<Irreducible> q_irreducibles(const Quasivariety& Q) {
  std::vector<Irreducible> out;
  for (const auto& B : Q.K()) {
    for (const auto& e : subalgebras_upto_iso(B, Q.budget()).entries) {
      auto S = subalgebra(B, e.carrier).algebra;
      S.name = B.name;
      if (S.size() < B.size()) {
        S.name += "[";
        for (std::size_t i = 0; i < e.carrier.size(); ++i) S.name += (i ? "," : "") + B.labels[e.carrier[i]];
        S.name += "]";
      }
      auto irr = q_irreducible(S, Q.K(), Q.budget());
      if (irr.unknown()) throw BudgetExceeded(irr.budget, Q.budget().get(irr.budget));
      if (!irr.yes()) continue;
      bool dup = false;
      for (const auto& o : out) {
        auto iso = isomorphic(S, o.algebra, Q.budget());
        if (iso.unknown()) throw BudgetExceeded(iso.budget, Q.budget().get(iso.budget));
        if (iso.yes()) dup = true;
      }
      if (!dup) out.push_back({std::move(S), B.name, e.carrier});
    }
  }
  return out;
}

Report primitive(const Quasivariety& Q) {
  Report r;
  r.question = "primitive";
  r.inputs = {{"K", detail::names_of(Q.K())}};
  r.assumptions.push_back(kWitnessGeneratorBound);
  try {
    auto irrs = q_irreducibles(Q);
    json checked = json::array();
    std::string unknown_cap;
    for (const auto& c : irrs) {
      auto wp = weakly_projective(Q, c.algebra);
      checked.push_back({{"algebra", c.algebra.name}, {"answer", to_string(wp.answer)}});
      if (wp.no()) {
        r.answer = Answer::no;
        r.witness = {{"algebra", c.algebra.name},
                     {"table", print_algebra(c.algebra)},
                     {"weak_projectivity", wp.witness},
                     {"checked", checked}};
        return r;
      }
      if (wp.unknown() && unknown_cap.empty()) unknown_cap = wp.budget;
    }
    r.witness = {{"irreducibles", checked}};
    if (!unknown_cap.empty()) {
      r.answer = Answer::unknown;
      r.budget = unknown_cap;
      return r;
    }
    r.answer = Answer::yes;
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

}  // namespace quasilab
