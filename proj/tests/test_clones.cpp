#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "quasilab/clones.hpp"
#include "quasilab/congruence.hpp"
#include "quasilab/corpus.hpp"
#include "quasilab/deduction.hpp"
#include "quasilab/morphisms.hpp"

using namespace quasilab;

namespace {

const char* kImplT = "imp(imp(x,y),imp(imp(y,x),z))";

Term term(const std::string& text, const Signature& sig) { return parse_term(text, sig, {"x", "y", "z", "w"}).term; }

}  // namespace

TEST_CASE("parse_clone_spec") {
  auto h = corpus("heyting3");
  auto C = parse_clone_spec("meet(x,y); imp(x,y)", h.sig);
  CHECK(C.names == std::vector<std::string>{"meet", "imp"});
  CHECK(C.arities == std::vector<int>{2, 2});
  auto D = parse_clone_spec("meet(x,imp(y,x)); c1", h.sig);
  CHECK(D.names == std::vector<std::string>{"t0", "c1"});
  CHECK(D.arities == std::vector<int>{2, 0});
}

TEST_CASE("reduct") {
  auto m3 = corpus("m3");
  auto full = reduct(m3, full_clone(m3.sig));
  CHECK(full.algebra.tables == m3.tables);

  auto h = corpus("heyting3");
  auto r = reduct(h, parse_clone_spec("meet(x,y); imp(x,y)", h.sig));
  CHECK(r.algebra.size() == 3);
  CHECK(r.algebra.sig.size() == 2);
  CHECK(r.algebra.tables[1] == h.tables[h.sig.find("imp")]);

  auto c = reduct(h, parse_clone_spec("c1", h.sig));
  REQUIRE(c.algebra.sig.size() == 1);
  CHECK(c.algebra.sig[0].arity == 0);
}

TEST_CASE("reduct tables equal term evaluation") {
  auto h = corpus("heyting3");
  auto C = parse_clone_spec("meet(x,imp(y,x)); join(imp(x,y),z); imp(x,c0)", h.sig);
  auto r = reduct(h, C);
  for (std::size_t i = 0; i < C.terms.size(); ++i) {
    std::vector<Elem> tab;
    oracle::for_tuples(h.size(), static_cast<std::size_t>(C.arities[i]),
                       [&](const std::vector<Elem>& v) { tab.push_back(oracle::eval(C.terms[i], h, v)); });
    CHECK(r.algebra.tables[i] == tab);
  }
}

TEST_CASE("term_clone") {
  auto imp = corpus("impl2");
  auto cl = term_clone(imp, 3, false);
  const Elem one = static_cast<Elem>(imp.element("1"));
  for (const auto& t : cl.tables) CHECK((t[1] == one || t[2] == one || t[4] == one));

  auto m3 = corpus("m3");
  auto u = term_clone(m3, 1, true);
  const Elem a = static_cast<Elem>(m3.element("a"));
  for (const auto& t : u.tables) {
    const bool constant = t[0] == t[1] && t[1] == t[2];
    CHECK((constant || t[a] == a));
  }

  for (const auto& name : {"lattice2", "z4", "sigma3"}) {
    auto b = corpus(name);
    auto c = term_clone(b, 1, false);
    std::vector<Elem> id(b.size());
    for (Elem e = 0; e < b.size(); ++e) id[e] = e;
    CHECK(std::find(c.tables.begin(), c.tables.end(), id) != c.tables.end());
  }
}

TEST_CASE("term_clone is closed and matches a naive closure") {
  for (const auto& [name, k] : std::vector<std::pair<std::string, std::uint32_t>>{
           {"impl2", 2}, {"lattice2", 3}, {"m3", 1}, {"z4", 2}, {"sigma3", 1}, {"heyting3", 1}}) {
    auto b = corpus(name);
    auto c = term_clone(b, k, false);
    REQUIRE_FALSE(c.truncated);
    std::set<std::vector<Elem>> members(c.tables.begin(), c.tables.end());
    auto naive = oracle::clone_closure(b, k);
    CHECK(members == std::set<std::vector<Elem>>(naive.begin(), naive.end()));
    for (std::size_t op = 0; op < b.sig.size(); ++op) {
      const auto ar = static_cast<std::size_t>(b.sig[op].arity);
      if (ar == 0 || ar > 2) continue;
      oracle::for_tuples(c.tables.size(), ar, [&](const std::vector<Elem>& pick) {
        std::vector<Elem> v(c.tables.front().size()), args(ar);
        for (std::size_t j = 0; j < v.size(); ++j) {
          for (std::size_t i = 0; i < ar; ++i) args[i] = c.tables[pick[i]][j];
          v[j] = oracle::op_at(b, op, args);
        }
        CHECK(members.count(v));
      });
    }
    for (std::size_t i = 0; i < c.terms.size(); ++i) CHECK(eval_table(c.terms[i], c.base, k) == c.tables[i]);
  }
}

TEST_CASE("c_structurally_complete") {
  auto h = corpus("heyting3");
  Quasivariety H({h});
  CHECK(c_structurally_complete(H, parse_clone_spec("meet(x,y); imp(x,y)", h.sig)).yes());
  for (const auto& name : {"lattice2", "m3", "impl2", "z4", "sigma3"}) {
    Quasivariety Q({corpus(name)});
    CHECK(c_structurally_complete(Q, full_clone(Q.sig())).answer == structurally_complete(Q).answer);
  }
}

TEST_CASE("C-structural completeness of M3 for the lattice clone against bounded C-rules") {
  auto m3 = corpus("m3");
  Quasivariety Q({m3});
  auto C = parse_clone_spec("meet(x,y); join(x,y)", m3.sig);
  auto r = c_structurally_complete(Q, C);
  REQUIRE_FALSE(r.unknown());

  // Lattice terms in x, y of depth <= 2, one per binary table on M3.
  const int meet = m3.sig.find("meet"), join = m3.sig.find("join");
  std::vector<Term> level{variable(0), variable(1)};
  std::map<std::vector<Elem>, Term> by_table;
  auto table2 = [&](const Term& t) {
    std::vector<Elem> v;
    oracle::for_tuples(3, 2, [&](const std::vector<Elem>& p) { v.push_back(oracle::eval(t, m3, p)); });
    return v;
  };
  for (const auto& t : level) by_table.emplace(table2(t), t);
  for (int d = 0; d < 2; ++d) {
    std::vector<Term> pool;
    for (const auto& [tab, t] : by_table) pool.push_back(t);
    for (const auto& s : pool)
      for (const auto& t : pool)
        for (int op : {meet, join}) by_table.emplace(table2(apply(op, {s, t})), apply(op, {s, t}));
  }
  std::vector<std::vector<Elem>> tabs;
  for (const auto& [tab, t] : by_table) tabs.push_back(tab);

  // Admissibility over binary term functions of M3 (full signature):
  // a premise mask P on M3^2 reaches the points hit by pairs of term
  // functions whose joint image lies inside P.
  auto funcs = oracle::clone_closure(m3, 2);
  std::set<oracle::Mask> images;
  for (const auto& f : funcs)
    for (const auto& g : funcs) {
      oracle::Mask w = 0;
      for (std::size_t j = 0; j < f.size(); ++j) w |= oracle::Mask{1} << (f[j] * 3 + g[j]);
      images.insert(w);
    }
  std::size_t gaps = 0, rules = 0;
  const oracle::Mask full = (1u << 9) - 1;
  std::vector<oracle::Mask> eqs;
  for (std::size_t i = 0; i < tabs.size(); ++i)
    for (std::size_t j = i + 1; j < tabs.size(); ++j) eqs.push_back(oracle::sat_mask(tabs[i], tabs[j]));
  std::vector<oracle::Mask> prem{full};
  prem.insert(prem.end(), eqs.begin(), eqs.end());
  for (auto P : prem) {
    const auto R = oracle::reach(images, P);
    for (auto Cm : eqs) {
      ++rules;
      const bool adm = (R & ~Cm) == 0;
      const bool der = (P & ~Cm) == 0;
      if (adm && !der) ++gaps;
    }
  }
  CHECK(rules > 0);
  if (r.yes()) CHECK(gaps == 0);
  if (r.no()) CHECK(gaps > 0);
}

TEST_CASE("C-structural completeness is antitone in C") {
  auto h = corpus("heyting3");
  Quasivariety H({h});
  const std::vector<std::string> chain{"meet(x,y); join(x,y); imp(x,y); c0; c1", "meet(x,y); join(x,y); imp(x,y)",
                                       "meet(x,y); imp(x,y)", "imp(x,y)"};
  bool yes_above = false;
  for (const auto& spec : chain) {
    auto r = c_structurally_complete(H, parse_clone_spec(spec, h.sig));
    if (yes_above) CHECK(r.yes());
    yes_above = yes_above || r.yes();
  }
  auto m3 = corpus("m3");
  Quasivariety M3({m3});
  if (c_structurally_complete(M3, parse_clone_spec("meet(x,y); join(x,y)", m3.sig)).yes())
    CHECK(c_structurally_complete(M3, parse_clone_spec("meet(x,y)", m3.sig)).yes());
}

TEST_CASE("u_presentable") {
  auto h = corpus("heyting3");
  auto Cimp = parse_clone_spec("meet(x,y); imp(x,y)", h.sig);
  CHECK(u_presentable(h, {h}, Congruence::identity(3), Cimp).yes());
  // Top edge a ~ 1 collapsed.
  auto top = cg(h, static_cast<Elem>(h.element("a")), static_cast<Elem>(h.element("1")));
  CHECK(top.num_blocks() == 2);
  CHECK(u_presentable(h, {h}, top, Cimp).yes());
  CHECK(u_presentable(h, {h}, top, full_clone(h.sig)).yes());
}

TEST_CASE("u-presentability for the full clone is embeddability of the quotient") {
  for (const auto& name : {"heyting3", "chain3", "z4", "impl2", "hilbert4"}) {
    auto a = corpus(name);
    const auto L = con_q(a, {a});
    for (const auto& theta : L.members()) {
      auto q = quotient(a, theta).algebra;
      CHECK(u_presentable(a, {a}, theta, full_clone(a.sig)).yes() == embeds(q, a).yes());
    }
  }
}

TEST_CASE("prucnal_principal_check") {
  auto h = corpus("hilbert4");
  CHECK(prucnal_principal_check(h, {h}, term(kImplT, h.sig), full_clone(h.sig)).yes());
  CHECK(prucnal_principal_check(h, {h}, term("z", h.sig), full_clone(h.sig)).no());
  auto imp = corpus("impl2");
  CHECK(prucnal_principal_check(imp, {imp}, term(kImplT, imp.sig), full_clone(imp.sig)).yes());
}

TEST_CASE("prucnal_iterate") {
  auto h = corpus("hilbert4");
  auto t = term(kImplT, h.sig);
  CHECK(prucnal_iterate(t, 1) == t);
  // x1 = 0, x2 = 1, y1 = 2, y2 = 3, z = 4.
  std::vector<Term> inner{variable(1), variable(3), variable(4)};
  std::vector<Term> outer{variable(0), variable(2), substitute(t, inner)};
  CHECK(prucnal_iterate(t, 2) == substitute(t, outer));
  CHECK(prucnal_var_names(2) == std::vector<std::string>{"x1", "x2", "y1", "y2", "z"});
}

TEST_CASE("td_term_check and commutes") {
  auto b = corpus("bool2");
  auto t = term("join(neg(join(meet(x,y),meet(neg(x),neg(y)))),z)", b.sig);
  CHECK(td_term_check(b, {b}, t).yes());
  CHECK(td_term_check(b, {b}, term("z", b.sig)).no());
  auto l = corpus("lattice2");
  auto maj = term("join(join(meet(x,y),meet(y,z)),meet(z,x))", l.sig);
  auto r = commutes(l, maj, term("meet(x,y)", l.sig));
  CHECK(r.yes());
  CHECK(r.witness["tuples_checked"] == 16);
}
