#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "quasilab/congruence.hpp"
#include "quasilab/corpus.hpp"
#include "quasilab/deduction.hpp"
#include "quasilab/morphisms.hpp"

using namespace quasilab;

namespace {

Algebra permuted(const Algebra& a, const std::vector<Elem>& perm) {
  // New element perm[e] is old element e.
  std::vector<std::string> labels(a.size());
  for (Elem e = 0; e < a.size(); ++e) labels[perm[e]] = a.labels[e];
  std::vector<std::vector<Elem>> tables;
  for (std::size_t k = 0; k < a.sig.size(); ++k) {
    const auto ar = static_cast<std::size_t>(a.sig[k].arity);
    std::vector<Elem> t(a.tables[k].size());
    oracle::for_tuples(a.size(), ar, [&](const std::vector<Elem>& u) {
      std::size_t idx = 0;
      for (Elem x : u) idx = idx * a.size() + perm[x];
      t[idx] = perm[oracle::op_at(a, k, u)];
    });
    tables.push_back(t);
  }
  return make_algebra(a.name + "_perm", a.sig, labels, tables);
}

std::set<HomMap> as_set(const std::vector<HomMap>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("homs") {
  auto z4 = corpus("z4"), z2 = corpus("z2");
  auto h = homs(z4, z2);
  CHECK(h.size() == 2);
  CHECK(as_set(h) == std::set<HomMap>{{0, 0, 0, 0}, {0, 1, 0, 1}});

  auto m3 = corpus("m3");
  HomOptions inj;
  inj.filter = HomFilter::injective;
  auto e = homs(m3, m3, inj);
  CHECK(std::find(e.begin(), e.end(), HomMap{0, 1, 2}) != e.end());

  auto lat = corpus("lattice2");
  HomOptions sur;
  sur.filter = HomFilter::surjective;
  CHECK(homs(lat, lat, sur) == std::vector<HomMap>{{0, 1}});
}

TEST_CASE("homs agree with exhaustive map enumeration") {
  std::mt19937 rng(17);
  for (int i = 0; i < 60; ++i) {
    auto a = oracle::random_algebra(rng, 2 + i % 3);
    auto b = oracle::random_algebra(rng, 2 + (i / 3) % 3);
    auto lib = homs(a, b);
    for (const auto& m : lib) CHECK(is_homomorphism(a, b, m));
    CHECK(as_set(lib) == as_set(oracle::homs(a, b)));
  }
  const std::vector<std::string> names{"m2", "m3", "m4", "z2", "z4", "impl2", "chain3", "heyting3"};
  for (const auto& x : names)
    for (const auto& y : names) {
      auto a = corpus(x), b = corpus(y);
      if (!(a.sig == b.sig)) continue;
      CHECK(as_set(homs(a, b)) == as_set(oracle::homs(a, b)));
    }
}

TEST_CASE("embeds") {
  auto m2 = corpus("m2"), m3 = corpus("m3"), z2 = corpus("z2"), z4 = corpus("z4");
  auto r = embeds(m2, m3);
  CHECK(r.yes());
  CHECK(embeds(m3, m2).no());
  auto rz = embeds(z2, z4);
  REQUIRE(rz.yes());
  CHECK(rz.witness["map"] == json({0, 2}));
}

TEST_CASE("isomorphic") {
  auto m3 = corpus("m3");
  CHECK(isomorphic(m3, permuted(m3, {2, 0, 1})).yes());
  auto m2 = corpus("m2");
  CHECK(isomorphic(product({m2, m2}).algebra, corpus("m4")).no());
  auto lat = corpus("lattice2");
  auto r = isomorphic(lat, lat);
  CHECK(r.yes());
  CHECK(r.witness["map"] == json({0, 1}));
}

TEST_CASE("retracts") {
  auto m2 = corpus("m2"), m3 = corpus("m3");
  Quasivariety Q({m2});
  const auto& F1 = Q.free(1).algebra();
  CHECK(F1.size() == 4);
  CHECK(retracts(F1, m2).yes());
  CHECK(retracts(m3, m2).no());
  CHECK(retracts(m3, m3).yes());
}

TEST_CASE("subalgebras up to isomorphism") {
  auto m3 = corpus("m3");
  auto s = subalgebras_upto_iso(m3);
  std::set<std::size_t> sizes;
  for (const auto& e : s.entries) sizes.insert(e.carrier.size());
  CHECK(sizes == std::set<std::size_t>{2, 3});

  auto z4 = corpus("z4");
  auto sz = subalgebras_upto_iso(z4);
  sizes.clear();
  for (const auto& e : sz.entries) sizes.insert(e.carrier.size());
  CHECK(sizes == std::set<std::size_t>{1, 2, 4});

  auto triv = corpus("trivial");
  CHECK(subalgebras_upto_iso(triv).entries.size() == 1);
}

TEST_CASE("subalgebra representatives embed and are pairwise non-isomorphic") {
  for (const auto& name : corpus_names()) {
    auto a = corpus(name);
    if (a.size() > 12) continue;
    auto s = subalgebras_upto_iso(a);
    std::vector<Algebra> reps;
    for (const auto& e : s.entries) {
      reps.push_back(subalgebra(a, e.carrier).algebra);
      CHECK(embeds(reps.back(), a).yes());
    }
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = i + 1; j < reps.size(); ++j) CHECK(isomorphic(reps[i], reps[j]).no());
  }
}

TEST_CASE("product, quotient and generated subalgebra") {
  auto z2 = corpus("z2");
  auto p = product({z2, z2});
  CHECK(p.algebra.size() == 4);
  const int add = z2.sig.find("add");
  for (Elem x = 0; x < 4; ++x)
    for (Elem y = 0; y < 4; ++y) {
      const Elem s = p.algebra.apply(add, {x, y});
      CHECK(p.coords[s][0] == (p.coords[x][0] + p.coords[y][0]) % 2);
      CHECK(p.coords[s][1] == (p.coords[x][1] + p.coords[y][1]) % 2);
    }

  auto z4 = corpus("z4");
  auto q = quotient(z4, Congruence::from_labels(std::vector<Elem>{0, 1, 0, 1}));
  CHECK(isomorphic(q.algebra, z2).yes());
  CHECK(q.map == HomMap{0, 1, 0, 1});

  auto m3 = corpus("m3");
  std::vector<Elem> seed{0};
  CHECK(generated_subalgebra(m3, seed) == std::vector<Elem>{0, 2});
}

TEST_CASE("morphism invariants") {
  for (const auto& name : corpus_names()) {
    auto a = corpus(name);
    if (a.size() > 12) continue;
    CHECK(isomorphic(quotient(a, Congruence::identity(a.size())).algebra, a).yes());
    CHECK(quotient(a, Congruence::all(a.size())).algebra.size() == 1);
  }
  std::mt19937 rng(23);
  for (int i = 0; i < 40; ++i) {
    auto a = oracle::random_algebra(rng, 2 + i % 2);
    auto b = oracle::random_algebra(rng, 2 + i % 3);
    auto e = embeds(a, b);
    if (e.yes()) CHECK(a.size() <= b.size());
    if (isomorphic(a, b).yes()) CHECK((embeds(a, b).yes() && embeds(b, a).yes()));
    std::vector<Elem> perm(b.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(isomorphic(b, permuted(b, perm)).yes());
  }
}
