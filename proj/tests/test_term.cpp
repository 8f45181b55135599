#include <doctest.h>

#include <random>
#include <set>

#include "magma/error.hpp"
#include "magma/term.hpp"
#include "oracles.hpp"

using namespace magma;

TEST_CASE("leaves and products are interned") {
  TermStore store;
  const Term x = store.leaf(0);
  CHECK(store.leaf(0) == x);
  CHECK(format_term(store, x) == "x");
  CHECK(store.size(x) == 1);
  CHECK_FALSE(store.decompose(x));

  const Term xx = store.node(x, x);
  CHECK(store.node(x, x) == xx);
  CHECK(format_term(store, xx) == "(x*x)");
  CHECK(store.size(xx) == 2);

  const Term chain = store.node(x, xx);
  CHECK(format_term(store, chain) == "(x*(x*x))");
  CHECK(store.size(chain) == 3);
  const auto parts = store.decompose(chain);
  REQUIRE(parts);
  CHECK(parts->first == x);
  CHECK(parts->second == xx);
}

TEST_CASE("decompose inverts node on random pairs") {
  oracle::Corpus corpus(4, 7);
  for (int i = 0; i < 100; ++i) {
    const Term a = corpus.any_term();
    const Term b = corpus.any_term();
    const Term ab = corpus.store.node(a, b);
    const auto parts = corpus.store.decompose(ab);
    REQUIRE(parts);
    CHECK(parts->first == a);
    CHECK(parts->second == b);
    CHECK(corpus.store.size(ab) == corpus.store.size(a) + corpus.store.size(b));
  }
}

TEST_CASE("enumeration matches the Catalan counts") {
  TermStore store;
  const auto& expected = oracle::level_counts();
  for (std::uint64_t n = 1; n <= 10; ++n) {
    const auto level = enumerate_level(store, n);
    CHECK(level.size() == expected[n - 1]);
    CHECK(count_level(n) == expected[n - 1]);
    for (Term t : level) CHECK(store.size(t) == n);
  }
  CHECK(format_term(store, enumerate_level(store, 1).front()) == "x");
}

TEST_CASE("enumerated terms are distinct and round-trip through the parser") {
  TermStore store;
  const auto level = enumerate_level(store, 7);
  std::set<Term> seen(level.begin(), level.end());
  CHECK(seen.size() == level.size());
  for (Term t : level) CHECK(parse_term(store, format_term(store, t)) == t);
}

TEST_CASE("counts with several generators scale by k^n") {
  CHECK(count_level(1, 2) == 2);
  CHECK(count_level(2, 2) == 4);
  CHECK(count_level(3, 3) == 54);  // 2 shapes times 3^3
  TermStore store(GeneratorSet::indexed(2));
  CHECK(enumerate_level(store, 3).size() == 16);
}

TEST_CASE("enumeration respects the level cap") {
  TermStore store;
  CHECK_THROWS_AS(enumerate_level(store, 13), CapExceeded);
  CHECK_THROWS_AS(enumerate_level(store, 5, Limits{4, 4096}), CapExceeded);
  CHECK_THROWS_AS(enumerate_level(store, 0), std::invalid_argument);
  CHECK(count_level(40) > 0);
}

TEST_CASE("right chains") {
  TermStore store;
  CHECK(format_term(store, right_chain(store, 1)) == "x");
  CHECK(format_term(store, right_chain(store, 3)) == "(x*(x*x))");
  CHECK(right_chain(store, 3) == parse_term(store, "(x*(x*x))"));
  CHECK(store.size(right_chain(store, 300)) == 300);
}

TEST_CASE("parser diagnostics") {
  TermStore store;
  CHECK(parse_term(store, "x") == store.leaf(0));
  CHECK(parse_term(store, " ( x * ( x*x ) ) ") == right_chain(store, 3));
  CHECK_THROWS_AS(parse_term(store, "((x*x)*x"), SyntaxError);
  CHECK_THROWS_AS(parse_term(store, "(x*y)"), SyntaxError);
  CHECK_THROWS_AS(parse_term(store, "x*x"), SyntaxError);
  CHECK_THROWS_AS(parse_term(store, ""), SyntaxError);
  try {
    parse_term(store, "(x*x))");
    FAIL("trailing input accepted");
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 5);
  }

  TermStore two(GeneratorSet::indexed(2));
  const Term t = parse_term(two, "(g0*(g1*g0))");
  CHECK(format_term(two, t) == "(g0*(g1*g0))");
  CHECK(two.generator(two.decompose(t)->first) == 0);
}

TEST_CASE("structural order sorts by size first") {
  TermStore store;
  const Term x = store.leaf(0);
  const Term big = right_chain(store, 4);
  CHECK(store.structural_less(x, big));
  CHECK_FALSE(store.structural_less(big, x));
  CHECK_FALSE(store.structural_less(x, x));
}
