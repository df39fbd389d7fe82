#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "quasilab/congruence.hpp"
#include "quasilab/corpus.hpp"
#include "quasilab/discriminator.hpp"
#include "quasilab/error.hpp"
#include "quasilab/morphisms.hpp"
#include "quasilab/term.hpp"

using namespace quasilab;

namespace {

Congruence labels(std::vector<Elem> v) { return Congruence::from_labels(v); }

std::set<std::vector<Elem>> blocks_of(const CongruenceLattice& L) {
  std::set<std::vector<Elem>> out;
  for (const auto& c : L.members()) out.insert(c.block);
  return out;
}

Product z2z2() {
  auto z2 = corpus("z2");
  return product({z2, z2});
}

}  // namespace

TEST_CASE("cg") {
  auto z4 = corpus("z4");
  CHECK(cg(z4, 0, 2) == labels({0, 1, 0, 1}));
  CHECK(cg(z4, std::vector<Pair>{}).is_identity());
  auto m3 = corpus("m3");
  CHECK(cg(m3, 0, static_cast<Elem>(m3.element("a"))).is_all());
}

TEST_CASE("cg is a closure operator") {
  std::mt19937 rng(29);
  for (int i = 0; i < 80; ++i) {
    auto a = oracle::random_algebra(rng, 3 + i % 3);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(a.size() - 1));
    std::vector<Pair> s{{pick(rng), pick(rng)}}, t = s;
    t.push_back({pick(rng), pick(rng)});
    auto cs = cg(a, s), ct = cg(a, t);
    CHECK(is_compatible(a, cs));
    CHECK(oracle::compatible_partition(a, cs.block));
    for (auto [x, y] : s) CHECK(cs.related(x, y));
    CHECK(cs.leq(ct));
    std::vector<Pair> all;
    for (Elem x = 0; x < a.size(); ++x)
      for (Elem y = 0; y < a.size(); ++y)
        if (cs.related(x, y)) all.push_back({x, y});
    CHECK(cg(a, all) == cs);
  }
}

TEST_CASE("con_all") {
  CHECK(con_all(corpus("lattice2")).size() == 2);
  auto c3 = con_all(corpus("chain3"));
  CHECK(c3.size() == 4);
  CHECK(con_all(corpus("m4")).size() == 2);
  for (const auto& name : corpus_names()) {
    auto a = corpus(name);
    if (a.size() > 8) continue;
    auto lib = blocks_of(con_all(a));
    CHECK(lib == oracle::congruences(a));
  }
}

TEST_CASE("con_q") {
  auto z4 = corpus("z4"), z2 = corpus("z2");
  auto L = con_q(z4, {z2});
  CHECK(blocks_of(L) == std::set<std::vector<Elem>>{{0, 1, 0, 1}, {0, 0, 0, 0}});
  CHECK_FALSE(L.contains_identity());

  auto p = z2z2();
  auto Lp = con_q(p.algebra, {z2});
  CHECK(Lp.size() == 5);
  CHECK(Lp.contains_identity());
  CHECK_FALSE(Lp.distributive());
}

TEST_CASE("con_q is the meet-closure of the hom kernels") {
  for (const auto& [an, kn] : std::vector<std::pair<std::string, std::string>>{
           {"z4", "z2"}, {"m3", "m3"}, {"m4", "m3"}, {"chain3", "lattice2"}, {"heyting3", "heyting3"}}) {
    auto a = corpus(an), k = corpus(kn);
    std::set<std::vector<Elem>> closure;
    for (const auto& h : oracle::homs(a, k)) closure.insert(oracle::kernel_blocks(h));
    closure.insert(std::vector<Elem>(a.size(), 0));
    bool grew = true;
    while (grew) {
      grew = false;
      const auto snap = closure;
      for (const auto& x : snap)
        for (const auto& y : snap) {
          std::vector<Elem> lab(a.size());
          for (std::size_t i = 0; i < a.size(); ++i) lab[i] = x[i] * a.size() + y[i];
          if (closure.insert(Congruence::from_labels(lab).block).second) grew = true;
        }
    }
    CHECK(blocks_of(con_q(a, {k})) == closure);
  }
}

TEST_CASE("con_q of an algebra relative to itself") {
  for (const auto& name : corpus_names()) {
    auto a = corpus(name);
    if (a.size() > 8) continue;
    auto rel = blocks_of(con_q(a, {a}));
    auto abs = blocks_of(con_all(a));
    for (const auto& c : rel) CHECK(abs.count(c));
    bool all_quotients_in_isp = true;
    for (const auto& c : abs)
      if (!in_isp(quotient(a, Congruence{c}).algebra, {a})) all_quotients_in_isp = false;
    if (all_quotients_in_isp) CHECK(rel == abs);
  }
}

TEST_CASE("q_irreducible") {
  auto m3 = corpus("m3");
  auto r = q_irreducible(m3, {m3});
  CHECK(r.yes());
  CHECK(r.witness["pair"] == json({0, 1}));
  auto z2 = corpus("z2");
  CHECK(q_irreducible(z2z2().algebra, {z2}).no());
  CHECK(q_irreducible(corpus("trivial"), {corpus("trivial")}).no());
  for (const auto& name : corpus_names()) {
    auto a = corpus(name);
    if (a.size() < 2 || a.size() > 12) continue;
    if (con_all(a).size() == 2) CHECK(q_irreducible(a, {a}).yes());
  }
}

TEST_CASE("max_separating_congruence") {
  auto z2 = corpus("z2");
  auto p = z2z2();
  // Diagonal {(0,0),(1,1)}: element indices 0 and 3.
  std::vector<Elem> diag{0, 3};
  auto theta = max_separating_congruence(p.algebra, diag, {z2});
  CHECK(theta.num_blocks() == 2);
  CHECK_FALSE(theta.related(0, 3));
  // Either projection kernel is maximal separating.
  CHECK((theta == labels({0, 1, 0, 1}) || theta == labels({0, 0, 1, 1})));

  std::vector<Elem> full{0, 1, 2, 3};
  CHECK(max_separating_congruence(p.algebra, full, {z2}).is_identity());

  auto z4 = corpus("z4");
  std::vector<Elem> sub{0, 2};
  CHECK_THROWS_AS(max_separating_congruence(z4, sub, {z2}), PreconditionError);
}

TEST_CASE("gamma_pseudocomplement") {
  auto c3 = corpus("chain3"), l2 = corpus("lattice2");
  auto g = gamma_pseudocomplement(c3, {l2}, {0, 1});
  CHECK(g == labels({0, 1, 1}));
  CHECK(gamma_pseudocomplement(c3, {l2}, {1, 1}).is_all());
  auto z2 = corpus("z2");
  CHECK_THROWS_AS(gamma_pseudocomplement(z2z2().algebra, {z2}, {0, 1}), PreconditionError);
}

TEST_CASE("gamma is the largest congruence meeting cg to the identity") {
  for (const auto& [an, kn] : std::vector<std::pair<std::string, std::string>>{
           {"chain3", "lattice2"}, {"m3", "m3"}, {"impl2", "impl2"}, {"heyting3", "heyting3"}}) {
    auto a = corpus(an), k = corpus(kn);
    auto L = con_q(a, {k});
    for (Elem x = 0; x < a.size(); ++x)
      for (Elem y = x + 1; y < a.size(); ++y) {
        auto g = gamma_pseudocomplement(a, {k}, {x, y});
        const auto& pc = L[L.principal(x, y)];
        CHECK(meet(g, pc).is_identity());
        for (const auto& c : L.members())
          if (meet(c, pc).is_identity()) CHECK(c.leq(g));
      }
  }
}

TEST_CASE("principal and gamma are complements on dual i-discriminator algebras") {
  auto imp = corpus("impl2");
  auto p = parse_term("imp(imp(imp(x,y),imp(imp(y,x),z)),z)", imp.sig).term;
  for (const auto& a : {imp, corpus("sigma3")}) {
    if (a.name == "impl2") REQUIRE(is_dual_i_discriminator({a}, p).yes());
    auto L = con_q(a, {a});
    for (Elem x = 0; x < a.size(); ++x)
      for (Elem y = x + 1; y < a.size(); ++y) {
        auto g = gamma_pseudocomplement(a, {a}, {x, y});
        auto gi = L.find(g);
        REQUIRE(gi.has_value());
        CHECK(L[L.join(L.principal(x, y), *gi)].is_all());
      }
  }
}

TEST_CASE("is_filtral") {
  auto m2 = corpus("m2");
  auto p = product({m2, m2});
  auto r = is_filtral({m2, m2}, p.coords, Congruence::identity(4));
  CHECK(r.yes());
  CHECK(r.witness["filter_generator"] == json({0, 1}));
  std::vector<Elem> first;
  for (const auto& c : p.coords) first.push_back(c[0]);
  CHECK(is_filtral({m2, m2}, p.coords, Congruence::from_labels(first)).yes());
  auto z2 = corpus("z2");
  auto pz = product({z2, z2});
  std::vector<Elem> sum;
  for (const auto& c : pz.coords) sum.push_back((c[0] + c[1]) % 2);
  CHECK(is_filtral({z2, z2}, pz.coords, Congruence::from_labels(sum)).no());
}

TEST_CASE("three_permute") {
  CHECK(three_permute(corpus("chain3"), {}).yes());
  auto z4 = corpus("z4");
  CHECK(three_permute(z4, {z4}).yes());
  auto l2 = corpus("lattice2");
  CHECK(three_permute(l2, {l2}).yes());
}
