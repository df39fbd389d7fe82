#include "doctest.h"
#include "oracles.hpp"
#include "quasilab/corpus.hpp"
#include "quasilab/error.hpp"
#include "quasilab/freealg.hpp"
#include "quasilab/morphisms.hpp"

using namespace quasilab;

TEST_CASE("free_algebra sizes") {
  CHECK(free_algebra({corpus("lattice2")}, 3).size() == 18);
  CHECK(free_algebra({corpus("z4")}, 1).size() == 4);
  CHECK(free_algebra({corpus("m2")}, 1).size() == 4);
  CHECK_THROWS_AS(free_algebra({corpus("lattice2")}, 0), PreconditionError);
  // Constants alone generate F(0).
  CHECK(free_algebra({corpus("m3")}, 0).size() == 2);
}

TEST_CASE("free_algebra sizes agree with naive closure") {
  const std::vector<std::pair<std::string, std::uint32_t>> cases{
      {"lattice2", 1}, {"lattice2", 2}, {"lattice2", 3}, {"chain3", 2}, {"m2", 2}, {"m3", 1},  {"m3", 2},
      {"m4", 1},       {"z2", 2},       {"z4", 2},       {"impl2", 2}, {"impl2", 3}, {"heyting3", 1}, {"sigma3", 1}};
  for (const auto& [name, n] : cases) {
    auto K = std::vector<Algebra>{corpus(name)};
    CHECK(free_algebra(K, n).size() == oracle::free_size(K, n));
  }
  std::vector<Algebra> K{corpus("m2"), corpus("m3")};
  CHECK(free_algebra(K, 1).size() == oracle::free_size(K, 1));
}

TEST_CASE("free_algebra truncates at the cap") {
  Budget b;
  b.free_size = 10;
  auto F = free_algebra({corpus("lattice2")}, 3, b);
  CHECK(F.truncated());
  CHECK(F.tripped_cap() == "free_size");
  CHECK_THROWS_AS(F.algebra(b), BudgetExceeded);
}

TEST_CASE("free_algebra stops at the closure step cap") {
  Budget b;
  b.closure_steps = 1000;
  auto F = free_algebra({corpus("sigma3")}, 3, b);
  CHECK(F.truncated());
  CHECK(F.tripped_cap() == "closure_steps");
  try {
    F.require_complete(b);
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(e.cap() == "closure_steps");
  }
  // A complete closure names no cap.
  CHECK(free_algebra({corpus("lattice2")}, 2, b).tripped_cap().empty());
}

TEST_CASE("witness terms reproduce element vectors") {
  for (const auto& name : {"lattice2", "m3", "z4", "impl2", "heyting3"}) {
    auto K = std::vector<Algebra>{corpus(name)};
    auto F = free_algebra(K, 2);
    for (std::size_t e = 0; e < F.size(); ++e) {
      const auto& co = F.coordinates();
      for (std::size_t c = 0; c < co.size(); ++c)
        CHECK(F.value(e, c) == oracle::eval(F.witness(e), K[co[c].member], co[c].assignment));
      CHECK(F.element_of(F.witness(e)) == std::optional<Elem>(static_cast<Elem>(e)));
    }
  }
}

TEST_CASE("free algebras grow monotonically and embed") {
  for (const auto& name : {"lattice2", "m2", "m3", "z2", "impl2"}) {
    auto K = std::vector<Algebra>{corpus(name)};
    std::size_t prev = 0;
    for (std::uint32_t m = 1; m <= 3; ++m) {
      if (std::string(name) == "m3" && m == 3) break;
      auto F = free_algebra(K, m);
      CHECK(F.size() >= prev);
      prev = F.size();
      if (m == 1) continue;
      auto Fm = free_algebra(K, m - 1);
      std::vector<Elem> images;
      for (std::uint32_t i = 0; i + 1 < m; ++i) images.push_back(F.generator(i));
      auto h = eval_hom(Fm, F.algebra(), images);
      CHECK(is_homomorphism(Fm.algebra(), F.algebra(), h));
      CHECK(std::set<Elem>(h.begin(), h.end()).size() == Fm.size());
    }
  }
}

TEST_CASE("eval_hom") {
  auto z4 = corpus("z4");
  auto F = free_algebra({z4}, 1);
  std::vector<Elem> two{2};
  auto h = eval_hom(F, z4, two);
  std::set<Elem> img(h.begin(), h.end());
  CHECK(img == std::set<Elem>{0, 2});
  CHECK(h[F.generator(0)] == 2);

  auto gens = F.generators();
  auto id = eval_hom(F, F.algebra(), gens);
  for (std::size_t e = 0; e < F.size(); ++e) CHECK(id[e] == e);

  // A coordinate's assignment gives the coordinate projection.
  auto lat = corpus("lattice2");
  auto F2 = free_algebra({lat}, 2);
  for (std::size_t c = 0; c < F2.coordinates().size(); ++c) {
    auto h2 = eval_hom(F2, lat, F2.coordinates()[c].assignment);
    for (std::size_t e = 0; e < F2.size(); ++e) CHECK(h2[e] == F2.value(e, c));
  }

  auto m3 = corpus("m3");
  auto Fm2 = free_algebra({corpus("m2")}, 1);
  std::vector<Elem> a{1};
  CHECK_THROWS_AS(eval_hom(Fm2, m3, a), PreconditionError);
}

TEST_CASE("finitely_presented") {
  auto z4 = corpus("z4");
  auto none = finitely_presented({z4}, 1, {});
  CHECK(none.quotient.size() == 4);

  auto rel = parse_quasiequation("add(x,x) = zero", z4.sig);
  auto p = finitely_presented({z4}, 1, {rel.conclusion});
  CHECK(isomorphic(p.quotient, corpus("z2")).yes());

  auto lat = corpus("lattice2");
  auto r2 = parse_quasiequation("meet(x,y) = x", lat.sig);
  auto p2 = finitely_presented({lat}, 2, {r2.conclusion});
  CHECK(p2.quotient.size() == 2);
}

TEST_CASE("relations hold in presented quotients") {
  const std::vector<std::pair<std::string, std::string>> cases{
      {"z4", "add(x,x) = zero"}, {"lattice2", "meet(x,y) = x"}, {"m3", "neg(x) = x"},
      {"impl2", "imp(x,y) = y"}, {"heyting3", "join(x,imp(x,c0)) = c1"}};
  for (const auto& [name, text] : cases) {
    auto a = corpus(name);
    auto q = parse_quasiequation(text, a.sig, {"x", "y"});
    auto p = finitely_presented({a}, 2, {q.conclusion});
    std::vector<Elem> gens;
    for (auto g : p.base->generators()) gens.push_back(p.map[g]);
    CHECK(eval(q.conclusion.lhs, p.quotient, gens) == eval(q.conclusion.rhs, p.quotient, gens));
    CHECK(is_homomorphism(p.base->algebra(), p.quotient, p.map));
  }
}
