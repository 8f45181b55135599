#include <doctest.h>

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "magma/error.hpp"
#include "magma/io.hpp"
#include "magma/mean.hpp"
#include "magma/rational.hpp"
#include "oracles.hpp"

using namespace magma;
using nlohmann::json;

TEST_CASE("rational text") {
  CHECK(parse_rational("2/5") == Rational(2, 5));
  CHECK(parse_rational("4/10") == Rational(2, 5));
  CHECK(parse_rational("0.4") == Rational(2, 5));
  CHECK(parse_rational("-3") == Rational(-3));
  CHECK(to_string(Rational(6, 4)) == "3/2");
  CHECK(to_string(Rational(0)) == "0/1");
  CHECK(to_string(Rational(5)) == "5/1");
  CHECK(power(Rational(1, 2), 10) == Rational(1, 1024));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("mean construction") {
  TermStore store;
  const Term x = store.leaf(0);
  const Term xx = store.node(x, x);
  using Entries = std::vector<std::pair<Term, Rational>>;

  CHECK(Mean::from_entries(Entries{{x, 1}}) == Mean::point(x));
  CHECK(Mean::from_entries(Entries{{x, Rational(1, 2)}, {x, Rational(1, 2)}}) == Mean::point(x));
  CHECK(Mean::from_entries(Entries{{x, 1}, {xx, 0}}).support_size() == 1);
  CHECK_THROWS_AS(Mean::from_entries(Entries{{x, Rational(1, 3)}}), InvalidMean);
  CHECK_THROWS_AS(Mean::from_entries(Entries{{x, 2}, {xx, -1}}), InvalidMean);
  CHECK_THROWS_AS(Mean::from_entries(Entries{}), InvalidMean);

  const Mean half = Mean::from_entries(Entries{{x, Rational(1, 2)}, {xx, Rational(1, 2)}});
  CHECK(half.weight(xx) == Rational(1, 2));
  CHECK(half.weight(right_chain(store, 3)) == 0);
  CHECK_FALSE(single_level(store, half));
  CHECK(single_level(store, Mean::point(xx)) == 2u);
  CHECK_THROWS_AS(LevelMean(store, half), InvalidMean);
}

TEST_CASE("uniform level means") {
  TermStore store;
  Classifier c(store);
  const LevelMean u3 = uniform_level(store, 3);
  CHECK(u3.level() == 3);
  CHECK(u3.mean().support_size() == 2);
  CHECK(measure_of(c, u3.mean(), SetExpr::z()) == Rational(1, 2));
  // (x*x) is in T_1 because x is not in Z, so (x*(x*x)) is in T_2; ((x*x)*x) is not.
  CHECK(measure_of(c, u3.mean(), SetExpr::t(2)) == Rational(1, 2));
  CHECK(measure_of(c, u3.mean(), SetExpr::t(3)) == 0);
  CHECK(measure_of(c, Mean::point(store.leaf(0)), SetExpr::gens()) == 1);
  CHECK(measure_of(c, uniform_level(store, 4).mean(), SetExpr::z()) == Rational(2, 5));
  CHECK_THROWS_AS(uniform_level(store, 9, Limits{12, 100}), CapExceeded);
}

TEST_CASE("convolution of uniform level-3 means misses Z") {
  TermStore store;
  Classifier c(store);
  const Mean u3 = uniform_level(store, 3).mean();
  const Mean sq = convolve(store, u3, u3);
  CHECK(sq.support_size() == 4);
  CHECK(single_level(store, sq) == 6u);
  CHECK(measure_of(c, sq, SetExpr::z()) == 0);
  CHECK(fubini_measure(store, c, u3, u3, SetExpr::z()) == 0);
  CHECK_THROWS_AS(convolve(store, u3, u3, Limits{12, 3}), CapExceeded);
}

TEST_CASE("convolution matches the printed product formula") {
  oracle::Corpus corpus;
  for (int i = 0; i < 60; ++i) {
    const Mean mu = corpus.mean();
    const Mean nu = corpus.mean();
    const Mean out = convolve(corpus.store, mu, nu);
    CHECK(oracle::printed(corpus.store, out) ==
          oracle::convolve(oracle::printed(corpus.store, mu), oracle::printed(corpus.store, nu)));
  }
}

TEST_CASE("product sets factor and the iterated sum agrees") {
  oracle::Corpus corpus;
  for (int i = 0; i < 60; ++i) {
    const Mean mu = corpus.mean();
    const Mean nu = corpus.mean();
    const SetExpr a = corpus.set();
    const SetExpr b = corpus.set();
    const Mean out = convolve(corpus.store, mu, nu);
    auto& c = corpus.classifier;
    CHECK(measure_of(c, out, SetExpr::product(a, b)) == measure_of(c, mu, a) * measure_of(c, nu, b));
    const SetExpr x = corpus.set();
    CHECK(fubini_measure(corpus.store, c, mu, nu, x) == measure_of(c, out, x));
  }
}

TEST_CASE("mean documents round-trip") {
  TermStore store;
  const Mean u4 = uniform_level(store, 4).mean();
  const json doc = mean_to_json(store, u4);
  REQUIRE(doc.is_array());
  CHECK(doc.size() == 5);
  CHECK(doc[0]["weight"] == "1/5");
  CHECK(mean_from_json(store, doc) == u4);

  const auto path = std::filesystem::temp_directory_path() / "magma_u4_test.json";
  write_json(path, doc);
  CHECK(load_mean(store, path) == u4);
  std::filesystem::remove(path);
}

TEST_CASE("malformed mean documents name the offending record") {
  TermStore store;
  const auto reject = [&](const json& doc, const std::string& needle) {
    try {
      mean_from_json(store, doc);
      FAIL("accepted " << doc.dump());
    } catch (const InvalidMean& e) {
      CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos, e.what());
    } catch (const SyntaxError& e) {
      CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos, e.what());
    }
  };
  reject(json::parse(R"([{"term":"x","weight":"1/3"}])"), "weights sum to 1/3");
  reject(json::parse(R"([{"term":"x","weight":"1/2"},{"term":"(x*","weight":"1/2"}])"), "record 1");
  reject(json::parse(R"([{"term":"x","weight":"0.5"},{"term":"x","weight":"0.5"}])"), "record 0");
  reject(json::parse(R"([{"term":"x"}])"), "record 0");
  reject(json::parse(R"({"term":"x"})"), "list of records");
}
