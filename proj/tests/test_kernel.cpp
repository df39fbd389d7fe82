#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "quasilab/corpus.hpp"
#include "quasilab/error.hpp"
#include "quasilab/term.hpp"

using namespace quasilab;

namespace {

const char* kLattice2 = R"(algebra lat
elements 0 1
op meet/2
0 0
0 1
op join/2
0 1
1 1
end
)";

std::vector<Elem> asg(std::initializer_list<Elem> v) { return v; }

}  // namespace

TEST_CASE("parse_algebra reads the smallest lattice") {
  auto a = parse_algebra(kLattice2);
  CHECK(a.size() == 2);
  REQUIRE(a.sig.size() == 2);
  CHECK(a.sig[0] == OpSymbol{"meet", 2});
  CHECK(a.sig[1] == OpSymbol{"join", 2});
  CHECK(a.apply(0, {1, 1}) == 1);
  CHECK(a.apply(1, {0, 1}) == 1);
}

TEST_CASE("parse_algebra reads the Kleene algebra M3") {
  auto m3 = corpus("m3");
  CHECK(m3.size() == 3);
  CHECK(m3.labels == std::vector<std::string>{"0", "a", "1"});
  CHECK(m3.sig.find("c0") >= 0);
  CHECK(m3.sig[m3.sig.find("c1")].arity == 0);
  CHECK(corpus("kleene3").tables == m3.tables);
}

TEST_CASE("parse_algebra errors") {
  SUBCASE("table size mismatch") {
    try {
      parse_algebra("algebra x\nelements 0 1\nop f/2\n0 0 1\nend\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("table size mismatch") != std::string::npos);
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("out-of-range entry") {
    try {
      parse_algebra("algebra x\nelements 0 1\nop g/1\n0 2\nend\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("out-of-range") != std::string::npos);
      CHECK(e.line() == 4);
      CHECK(e.column() == 3);
    }
  }
  SUBCASE("duplicate op") {
    CHECK_THROWS_AS(parse_algebra("algebra x\nelements 0\nop g/1\n0\nop g/1\n0\nend\n"), ParseError);
  }
  SUBCASE("missing end") { CHECK_THROWS_AS(parse_algebra("algebra x\nelements 0\n"), ParseError); }
}

TEST_CASE("parse_term builds shared terms") {
  auto m3 = corpus("m3");
  auto t = parse_term("meet(x, neg(x))", m3.sig).term;
  const int meet = m3.sig.find("meet"), neg = m3.sig.find("neg");
  CHECK(t == apply(meet, {variable(0), apply(neg, {variable(0)})}));
  CHECK(t->args()[0] == variable(0));

  auto imp = corpus("impl2");
  auto p = parse_term("imp(imp(x,y), z)", imp.sig);
  CHECK(p.vars == std::vector<std::string>{"x", "y", "z"});
  CHECK(var_bound(p.term) == 3);

  CHECK_THROWS_AS(parse_term("meet(x)", m3.sig), ParseError);
  CHECK(parse_term("c1", m3.sig).term == apply(m3.sig.find("c1"), {}));
}

TEST_CASE("eval") {
  auto m3 = corpus("m3");
  CHECK(eval(variable(0), m3, asg({1})) == 1);
  const Elem a = static_cast<Elem>(m3.element("a"));
  CHECK(eval(parse_term("neg(x)", m3.sig).term, m3, asg({a})) == a);

  auto imp = corpus("impl2");
  auto p = parse_term("imp(imp(imp(x,y),imp(imp(y,x),z)),z)", imp.sig).term;
  CHECK(eval(p, imp, asg({0, 1, 0})) == 0);
  // Exhaustive table: z when x != y, 1 when x = y.
  auto tab = eval_table(p, imp, 3);
  CHECK(tab == std::vector<Elem>{1, 1, 0, 1, 0, 1, 1, 1});
}

TEST_CASE("holds") {
  auto lat = corpus("lattice2");
  CHECK(holds(lat, parse_quasiequation("meet(x,y) = meet(y,x)", lat.sig)));

  auto z4 = corpus("z4");
  auto r = check_quasiequation(z4, parse_quasiequation("add(x,x) = zero => x = zero", z4.sig));
  CHECK_FALSE(r.holds);
  CHECK(r.counterexample == std::vector<Elem>{static_cast<Elem>(z4.element("2"))});

  auto m3 = corpus("m3");
  auto r3 = check_quasiequation(m3, parse_quasiequation("neg(x) = x => x = y", m3.sig));
  CHECK_FALSE(r3.holds);
  CHECK(r3.counterexample == std::vector<Elem>{static_cast<Elem>(m3.element("a")), 0});
}

TEST_CASE("print and parse round-trip") {
  for (const auto& name : corpus_names()) {
    auto a = corpus(name);
    auto b = parse_algebra(print_algebra(a));
    CHECK(b.labels == a.labels);
    CHECK(b.sig == a.sig);
    CHECK(b.tables == a.tables);
  }
  std::mt19937 rng(11);
  auto m3 = corpus("m3");
  for (int i = 0; i < 200; ++i) {
    auto t = oracle::random_term(rng, m3.sig, 3, 4);
    std::vector<std::string> names{"x", "y", "z"};
    CHECK(parse_term(print_term(t, m3.sig, names), m3.sig, names).term == t);
  }
}

TEST_CASE("eval is substitution-compatible") {
  std::mt19937 rng(5);
  for (int round = 0; round < 100; ++round) {
    auto a = oracle::random_algebra(rng, 2 + round % 3);
    auto t = oracle::random_term(rng, a.sig, 3, 4);
    auto s = oracle::random_term(rng, a.sig, 3, 3);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(a.size() - 1));
    std::vector<Elem> v{pick(rng), pick(rng), pick(rng)};
    std::vector<Term> images{s, variable(1), variable(2)};
    auto lhs = eval(substitute(t, images), a, v);
    auto v2 = v;
    v2[0] = eval(s, a, v);
    CHECK(lhs == eval(t, a, v2));
    CHECK(eval(t, a, v) == oracle::eval(t, a, v));
  }
}

TEST_CASE("holds agrees with a brute-force double loop") {
  std::mt19937 rng(3);
  for (const auto& name : corpus_names()) {
    auto a = corpus(name);
    if (a.size() > 4 || a.sig.size() == 0) continue;
    for (int i = 0; i < 20; ++i) {
      auto s = oracle::random_term(rng, a.sig, 2, 3);
      auto t = oracle::random_term(rng, a.sig, 2, 3);
      bool brute = true;
      oracle::for_tuples(a.size(), 2, [&](const std::vector<Elem>& v) {
        if (oracle::eval(s, a, v) != oracle::eval(t, a, v)) brute = false;
      });
      CHECK(holds(a, make_quasiequation({}, {s, t}, {"x", "y"})) == brute);
    }
  }
}

TEST_CASE("terms are hash-consed") {
  auto m3 = corpus("m3");
  auto t1 = parse_term("join(meet(x,y),neg(z))", m3.sig).term;
  auto t2 = parse_term("join(meet(x,y),neg(z))", m3.sig).term;
  CHECK(t1 == t2);
  CHECK(dag_size(std::vector<Term>{t1, t2}) == 6);
  CHECK(depth(t1) == 2);
}
