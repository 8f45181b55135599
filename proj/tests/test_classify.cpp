#include <doctest.h>

#include "magma/classify.hpp"
#include "magma/error.hpp"
#include "magma/set_expr.hpp"
#include "oracles.hpp"

using namespace magma;

TEST_CASE("hand-unfolded memberships") {
  TermStore store;
  Classifier c(store);
  const Term x = store.leaf(0);
  const Term xx = parse_term(store, "(x*x)");
  CHECK(c.in_T(x, 0));
  CHECK_FALSE(c.in_T(x, 1));
  CHECK(c.in_T(xx, 1));
  CHECK_FALSE(c.in_T(xx, 2));
  CHECK_FALSE(c.in_Z(x));
  CHECK_FALSE(c.in_Z(xx));
  CHECK(c.in_Z(parse_term(store, "(x*(x*x))")));
  CHECK_FALSE(c.in_Z(parse_term(store, "((x*x)*x)")));
  CHECK(c.t_depth(parse_term(store, "(x*(x*x))")) == 2);
}

TEST_CASE("memoized classifier agrees with the literal recursion to level 8") {
  TermStore store;
  Classifier c(store);
  for (std::uint64_t n = 1; n <= 8; ++n) {
    for (Term t : enumerate_level(store, n)) {
      const std::string text = format_term(store, t);
      REQUIRE(c.in_Z(t) == oracle::in_z(text));
      for (std::uint64_t p = 0; p <= 8; ++p) REQUIRE(c.in_T(t, p) == oracle::in_t(text, p));
    }
  }
}

TEST_CASE("T_p is empty below level p+1") {
  TermStore store;
  Classifier c(store);
  for (std::uint64_t n = 1; n <= 7; ++n) {
    for (Term t : enumerate_level(store, n)) {
      CHECK(c.t_depth(t) < n);
      CHECK_FALSE(c.in_T(t, n));
    }
  }
  CHECK(c.t_depth(right_chain(store, 2000)) == 1999);
}

TEST_CASE("set expressions") {
  TermStore store;
  Classifier c(store);
  const Term x = store.leaf(0);
  const Term chain = right_chain(store, 3);
  CHECK(member(c, x, SetExpr::gens()));
  CHECK(member(c, chain, SetExpr::product(SetExpr::level(1), SetExpr::t(1))));
  CHECK_FALSE(member(c, x, SetExpr::product(SetExpr::gens(), SetExpr::gens())));
  CHECK(member(c, chain, parse_set_expr(store, "union(S(2), inter(Z, not(T(3))))")));
  CHECK(member(c, chain, parse_set_expr(store, "set(x, (x*(x*x)))")));
  CHECK_FALSE(member(c, chain, parse_set_expr(store, "set()")));
  CHECK_FALSE(member(c, x, parse_set_expr(store, "prod(I, I)")));
  CHECK_THROWS_AS(parse_set_expr(store, "prod(I)"), SyntaxError);
  CHECK_THROWS_AS(parse_set_expr(store, "S(x)"), SyntaxError);
  CHECK_THROWS_AS(parse_set_expr(store, "W"), SyntaxError);
}

TEST_CASE("set expressions print in the parser's syntax") {
  TermStore store;
  for (const char* text : {"I", "S(4)", "T(0)", "Z", "not(Z)", "prod(S(1),T(2))",
                           "union(I,Z,T(1))", "inter(S(2),not(I))", "set(x,(x*x))"}) {
    const SetExpr e = parse_set_expr(store, text);
    CHECK(format_set_expr(store, e) == text);
    CHECK(format_set_expr(store, parse_set_expr(store, format_set_expr(store, e))) == text);
  }
}

TEST_CASE("Z is the disjoint union of the S_p * T_p") {
  TermStore store;
  Classifier c(store);
  for (std::uint64_t n = 1; n <= 8; ++n) {
    for (Term t : enumerate_level(store, n)) {
      int hits = 0;
      for (std::uint64_t p = 1; p <= 8; ++p) {
        hits += member(c, t, SetExpr::product(SetExpr::level(p), SetExpr::t(p)));
      }
      CHECK(hits == (c.in_Z(t) ? 1 : 0));
    }
  }
}
