#include "magma/obstruction.hpp"

#include <set>
#include <stdexcept>

namespace magma {
namespace {

std::set<std::uint64_t> levels_of(const TermStore& store, const Mean& mu) {
  std::set<std::uint64_t> out;
  for (const auto& [t, w] : mu.weights()) out.insert(store.size(t));
  return out;
}

SetExpr levels_up_to(std::uint64_t n) {
  std::vector<SetExpr> parts;
  for (std::uint64_t k = 1; k <= n; ++k) parts.push_back(SetExpr::level(k));
  return SetExpr::unite(std::move(parts));
}

nlohmann::json to_json(const std::vector<Rational>& values) {
  auto out = nlohmann::json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

}  // namespace

Rational z_via_levels(Classifier& classifier, const Mean& mu, const Mean& nu) {
  Rational total;
  for (std::uint64_t p : levels_of(classifier.store(), mu)) {
    total += measure_of(classifier, mu, SetExpr::level(p)) * measure_of(classifier, nu, SetExpr::t(p));
  }
  return total;
}

std::pair<Rational, Rational> t_recursion(TermStore& store, Classifier& classifier,
                                          const Mean& mu, const Mean& nu, std::uint64_t p,
                                          const Limits& limits) {
  const Mean product = convolve(store, mu, nu, limits);
  return {measure_of(classifier, product, SetExpr::t(p + 1)),
          (1 - measure_of(classifier, mu, SetExpr::z())) * measure_of(classifier, nu, SetExpr::t(p))};
}

Discrepancy discrepancy_witness(TermStore& store, Classifier& classifier, const Mean& mu) {
  const auto levels = levels_of(store, mu);
  if (levels.empty()) throw std::invalid_argument("discrepancy_witness needs a nonempty support");
  SetExpr set = levels_up_to(*levels.rbegin());
  Rational gap = measure_of(classifier, mu, set) - fubini_measure(store, classifier, mu, mu, set);
  return {std::move(set), std::move(gap)};
}

ObstructionReport walkthrough(TermStore& store, Classifier& classifier, const Mean& mu,
                              std::uint64_t depth) {
  if (depth == 0) throw std::invalid_argument("walkthrough depth must be positive");
  ObstructionReport rep;
  const auto levels = levels_of(store, mu);
  rep.support_size = mu.support_size();
  rep.min_level = levels.empty() ? 0 : *levels.begin();
  rep.max_level = levels.empty() ? 0 : *levels.rbegin();
  rep.depth = depth;
  rep.r = measure_of(classifier, mu, SetExpr::z());

  auto square = [&](const SetExpr& set) { return fubini_measure(store, classifier, mu, mu, set); };

  for (std::uint64_t k = 1; k <= depth; ++k) {
    rep.level_mass.push_back(measure_of(classifier, mu, SetExpr::level(k)));
    rep.square_level_mass.push_back(square(SetExpr::level(k)));
  }
  for (std::uint64_t k = 1; k <= depth; ++k) {
    Rational conv;
    for (std::uint64_t i = 1; i < k; ++i) conv += rep.level_mass[i - 1] * rep.level_mass[k - i - 1];
    rep.level_convolution.push_back(conv);
  }
  for (std::uint64_t k = 0; k <= depth; ++k) {
    rep.t_mass.push_back(measure_of(classifier, mu, SetExpr::t(k)));
    rep.square_t_mass.push_back(square(SetExpr::t(k)));
  }
  rep.square_z = square(SetExpr::z());
  rep.square_z_via_levels = z_via_levels(classifier, mu, mu);

  std::vector<SetExpr> head;
  for (std::uint64_t k = 1; k < depth; ++k) {
    head.push_back(SetExpr::product(SetExpr::level(k), SetExpr::t(k)));
  }
  rep.covering_head = square(SetExpr::unite(std::move(head)));
  const SetExpr high_levels = SetExpr::complement(levels_up_to(depth - 1));
  rep.covering_tail = square(SetExpr::product(high_levels, SetExpr::t(depth)));
  rep.tail_bound = measure_of(classifier, mu, SetExpr::t(depth));
  rep.covering_holds = rep.square_z <= rep.covering_head + rep.covering_tail &&
                       rep.covering_tail <= rep.tail_bound;

  auto add = [&](std::string statement, Rational expected, Rational actual) {
    const bool holds = expected == actual;
    rep.consequences.push_back({std::move(statement), std::move(expected), std::move(actual), holds});
  };
  add("mu(S_1) = mu(I) = 0", 0, rep.level_mass[0]);
  for (std::uint64_t k = 1; k <= depth; ++k) {
    add("mu(S_" + std::to_string(k) + ") = sum_{i+j=" + std::to_string(k) + "} mu(S_i) mu(S_j)",
        rep.level_convolution[k - 1], rep.level_mass[k - 1]);
  }
  for (std::uint64_t k = 1; k <= depth; ++k) {
    add("mu(T_" + std::to_string(k) + ") = (1-r)^" + std::to_string(k), power(1 - rep.r, k),
        rep.t_mass[k]);
  }
  add("mu(Z) = (mu*mu)(Z)", rep.square_z, rep.r);
  if (sgn(rep.r) == 0) {
    // every section {t : s*t in Z} = T_{#s} would have mass (1-0)^{#s} = 1
    add("r = 0 forces (mu*mu)(Z) = 1", 1, rep.square_z);
  } else {
    std::uint64_t n = 1;
    for (Rational decay = 1 - rep.r; decay >= rep.r; decay *= 1 - rep.r) ++n;
    add("r > 0: mu(T_" + std::to_string(n) + ") = (1-r)^" + std::to_string(n) +
            " < r, the least such power",
        power(1 - rep.r, n), measure_of(classifier, mu, SetExpr::t(n)));
  }
  rep.discrepancy = discrepancy_witness(store, classifier, mu);
  return rep;
}

nlohmann::json report_to_json(const TermStore& store, const ObstructionReport& rep) {
  auto consequences = nlohmann::json::array();
  std::size_t violated = 0;
  for (const auto& c : rep.consequences) {
    consequences.push_back({{"statement", c.statement},
                            {"idempotent_value", to_string(c.expected)},
                            {"actual", to_string(c.actual)},
                            {"holds", c.holds}});
    if (!c.holds) ++violated;
  }
  return {
      {"mean", {{"support_size", rep.support_size},
                {"min_level", rep.min_level},
                {"max_level", rep.max_level}}},
      {"depth", rep.depth},
      {"r", to_string(rep.r)},
      {"level_mass", to_json(rep.level_mass)},
      {"square_level_mass", to_json(rep.square_level_mass)},
      {"level_convolution", to_json(rep.level_convolution)},
      {"t_mass", to_json(rep.t_mass)},
      {"square_t_mass", to_json(rep.square_t_mass)},
      {"square_z", to_string(rep.square_z)},
      {"square_z_via_levels", to_string(rep.square_z_via_levels)},
      {"covering", {{"lhs", to_string(rep.square_z)},
                    {"head", to_string(rep.covering_head)},
                    {"tail", to_string(rep.covering_tail)},
                    {"tail_bound", to_string(rep.tail_bound)},
                    {"holds", rep.covering_holds}}},
      {"idempotence_consequences", std::move(consequences)},
      {"violated_consequences", violated},
      {"discrepancy", {{"set", format_set_expr(store, rep.discrepancy.set)},
                       {"gap", to_string(rep.discrepancy.gap)}}},
  };
}

}  // namespace magma
