#include "doctest.h"
#include "quasilab/congruence.hpp"
#include "quasilab/corpus.hpp"
#include "quasilab/deduction.hpp"
#include "quasilab/error.hpp"
#include "quasilab/morphisms.hpp"
#include "quasilab/projectivity.hpp"

using namespace quasilab;

TEST_CASE("projective") {
  auto m2 = corpus("m2"), m3 = corpus("m3");
  auto r = projective(Quasivariety({m2}), m2);
  CHECK(r.yes());
  CHECK(r.witness["free_size"] == 2);  // m2 is generated by its constants
  CHECK(projective(Quasivariety({m3}), m3).no());
  Quasivariety L({corpus("lattice2")});
  CHECK(projective(L, L.free(1).algebra()).yes());
  CHECK_THROWS_AS(projective(Quasivariety({corpus("z2")}), corpus("z4")), PreconditionError);
}

TEST_CASE("weakly_projective") {
  auto m2 = corpus("m2"), m3 = corpus("m3");
  CHECK(weakly_projective(Quasivariety({m2}), m2).yes());
  auto r = weakly_projective(Quasivariety({m3}), m3);
  CHECK(r.no());
  CHECK(r.witness.contains("theta"));
  Quasivariety Z4({corpus("z4")});
  CHECK(weakly_projective(Z4, trivial_algebra(Z4.sig())).yes());
}

TEST_CASE("endo_kernel_check") {
  auto h = corpus("hilbert4");
  CHECK(endo_kernel_check(h, {h}).yes());
  auto m3 = corpus("m3");
  CHECK(endo_kernel_check(m3, {m3}).no());
  auto z4 = corpus("z4");
  CHECK(endo_kernel_check(z4, {z4}).yes());
}

TEST_CASE("primitive") {
  CHECK(primitive(Quasivariety({corpus("impl2")})).yes());
  auto r = primitive(Quasivariety({corpus("m3")}));
  CHECK(r.no());
  CHECK(r.witness["algebra"] == "m3");
  CHECK(primitive(Quasivariety({corpus("z4")})).yes());
}

TEST_CASE("projective implies weakly projective implies exact") {
  for (const auto& name : {"lattice2", "chain3", "m2", "m3", "m4", "z2", "z4", "impl2", "heyting3", "sigma3"}) {
    Quasivariety Q({corpus(name)});
    for (const auto& irr : q_irreducibles(Q)) {
      const auto& b = irr.algebra;
      std::vector<Elem> gens;
      const auto g = static_cast<std::uint32_t>(min_generators(b, &gens));
      auto p = projective(Q, b);
      auto w = weakly_projective(Q, b);
      auto e = exact(Q, b, std::max<std::uint32_t>(g, 1));
      if (p.yes()) CHECK(w.yes());
      if (w.yes()) CHECK(e.yes());
    }
  }
}

TEST_CASE("weak projectivity equals projectivity for subdirectly irreducible generators") {
  for (const auto& name : {"m2", "m3", "m4", "z2", "z4", "impl2", "heyting3", "chain3", "lattice2"}) {
    auto b = corpus(name);
    auto L = con_all(b);
    std::size_t atoms = 0;
    for (std::size_t i = 0; i < L.size(); ++i) atoms += L.atom(i);
    if (atoms != 1) continue;
    Quasivariety Q({b});
    CHECK(weakly_projective(Q, b).answer == projective(Q, b).answer);
  }
}

TEST_CASE("weak projectivity is stable one rank above the generator bound") {
  // sigma3 is left out: its rank-3 free algebra is beyond desk scale.
  for (const auto& name : {"lattice2", "m2", "m3", "z2", "impl2", "heyting3", "chain3"}) {
    auto b = corpus(name);
    Quasivariety Q({b});
    const auto g = static_cast<std::uint32_t>(std::max<std::size_t>(1, min_generators(b)));
    auto base = weakly_projective(Q, b, g);
    auto above = weakly_projective(Q, b, g + 1);
    REQUIRE_FALSE(base.unknown());
    REQUIRE_FALSE(above.unknown());
    if (base.yes()) CHECK(above.yes());
  }
  // At rank |b| + 1 where the free algebra stays small.
  for (const auto& name : {"lattice2", "z2", "impl2", "m2"}) {
    auto b = corpus(name);
    Quasivariety Q({b});
    auto base = weakly_projective(Q, b);
    auto above = weakly_projective(Q, b, static_cast<std::uint32_t>(b.size() + 1));
    if (base.yes()) CHECK(above.yes());
  }
}

TEST_CASE("endomorphism kernels give weak projectivity of Hilbert quotients") {
  auto h = corpus("hilbert4");
  REQUIRE(endo_kernel_check(h, {h}).yes());
  Quasivariety Q({h});
  const auto L = con_q(h, {h});
  for (const auto& theta : L.members()) {
    auto qa = quotient(h, theta).algebra;
    if (qa.size() < 2 || min_generators(qa) > 2) continue;
    auto w = weakly_projective(Q, qa);
    CHECK(w.yes());
  }
}

TEST_CASE("irreducibles are deduplicated by isomorphism") {
  Quasivariety Q({corpus("m4")});
  auto irr = q_irreducibles(Q);
  for (std::size_t i = 0; i < irr.size(); ++i)
    for (std::size_t j = i + 1; j < irr.size(); ++j) CHECK(isomorphic(irr[i].algebra, irr[j].algebra).no());
}
