#include <doctest.h>

#include <map>
#include <vector>

#include "magma/profile.hpp"
#include "magma/substitution.hpp"
#include "oracles.hpp"

using namespace magma;

TEST_CASE("signatures compose like the classifier") {
  oracle::Corpus corpus(5, 3);
  auto& c = corpus.classifier;
  for (int i = 0; i < 300; ++i) {
    const Term a = corpus.any_term();
    const Term b = corpus.any_term();
    CHECK(combine(signature_of(c, a), signature_of(c, b)) ==
          signature_of(c, corpus.store.node(a, b)));
  }
}

TEST_CASE("census counts match enumeration through level 11") {
  TermStore store;
  Classifier c(store);
  UniformCensus census;
  for (std::uint64_t n = 1; n <= 11; ++n) {
    std::map<Signature, Integer> counted;
    std::uint64_t z = 0;
    const auto level = enumerate_level(store, n);
    for (Term t : level) {
      ++counted[signature_of(c, t)];
      z += c.in_Z(t);
    }
    CHECK(census.count(n) == level.size());
    CHECK(census.z_count(n) == z);
    CHECK(census.signature_counts(n) == counted);
  }
  CHECK(census.count(10) == 4862);
}

TEST_CASE("census profiles agree with measured uniform means") {
  TermStore store;
  Classifier c(store);
  UniformCensus census;
  for (std::uint64_t n = 1; n <= 9; ++n) {
    const Mean u = uniform_level(store, n).mean();
    const MeanProfile from_census = census.uniform_profile(n);
    const MeanProfile measured = MeanProfile::of(c, u);
    CHECK(from_census.z_mass() == measure_of(c, u, SetExpr::z()));
    CHECK(measured.z_mass() == from_census.z_mass());
    for (std::uint64_t p = 0; p <= n + 1; ++p) {
      CHECK(from_census.t_mass(p) == measure_of(c, u, SetExpr::t(p)));
      CHECK(measured.t_mass(p) == from_census.t_mass(p));
    }
    CHECK(from_census.level_mass() == measured.level_mass());
    CHECK(from_census.max_level() == n);
  }
}

TEST_CASE("both lazy routes agree with materialized substitution") {
  oracle::Corpus corpus(4, 41);
  auto& store = corpus.store;
  auto& c = corpus.classifier;
  for (int trial = 0; trial < 120; ++trial) {
    const Term s = corpus.terms[corpus.uniform(0, 8)];  // levels 1..4
    std::vector<Mean> means;
    std::vector<MeanProfile> profiles;
    for (std::uint64_t k = 0; k < store.size(s); ++k) {
      means.push_back(corpus.mean(3));
      profiles.push_back(MeanProfile::of(c, means.back()));
    }
    std::vector<const MeanProfile*> leaves;
    for (const auto& p : profiles) leaves.push_back(&p);
    const Mean out = substitute(store, s, means);
    ProfiledSubstitution lazy(store, s, leaves);
    const Rational z = measure_of(c, out, SetExpr::z());
    CHECK(lazy.factorized(SetExpr::z()) == z);
    CHECK(lazy.pushforward(SetExpr::z()) == z);
    for (std::uint64_t p = 0; p <= 6; ++p) {
      const Rational t = measure_of(c, out, SetExpr::t(p));
      CHECK(lazy.factorized(SetExpr::t(p)) == t);
      CHECK(lazy.pushforward(SetExpr::t(p)) == t);
    }
    for (std::uint64_t n = 1; n <= 12; ++n) {
      CHECK(lazy.pushforward(SetExpr::level(n)) == measure_of(c, out, SetExpr::level(n)));
    }
    CHECK(lazy.factorized(SetExpr::gens()) == measure_of(c, out, SetExpr::gens()));
  }
}

TEST_CASE("lazy routes reject general sets") {
  TermStore store;
  Classifier c(store);
  const MeanProfile p = MeanProfile::of(c, Mean::point(store.leaf(0)));
  ProfiledSubstitution lazy(store, store.leaf(0), {&p});
  CHECK_THROWS_AS(lazy.factorized(SetExpr::complement(SetExpr::z())), std::invalid_argument);
  CHECK_THROWS_AS(lazy.pushforward(SetExpr::complement(SetExpr::z())), std::invalid_argument);
}
