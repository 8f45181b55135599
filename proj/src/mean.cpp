#include "magma/mean.hpp"

#include "magma/error.hpp"

namespace magma {

Mean Mean::from_entries(std::span<const std::pair<Term, Rational>> entries) {
  Weights weights;
  Rational total;
  for (const auto& [term, weight] : entries) {
    if (sgn(weight) < 0) {
      throw InvalidMean("negative weight " + to_string(weight) + " on term #" +
                        std::to_string(term.id));
    }
    total += weight;
    if (sgn(weight) > 0) weights[term] += weight;
  }
  if (total != 1) throw InvalidMean("total mass is " + to_string(total) + ", expected 1");
  return Mean(std::move(weights));
}

Mean Mean::point(Term t) { return Mean(Weights{{t, Rational(1)}}); }

Rational Mean::weight(Term t) const {
  auto it = weights_.find(t);
  return it == weights_.end() ? Rational(0) : it->second;
}

std::optional<std::uint64_t> single_level(const TermStore& store, const Mean& mean) {
  std::optional<std::uint64_t> level;
  for (const auto& [t, w] : mean.weights()) {
    const std::uint64_t n = store.size(t);
    if (level && *level != n) return std::nullopt;
    level = n;
  }
  return level;
}

LevelMean::LevelMean(const TermStore& store, Mean mean) : mean_(std::move(mean)) {
  auto level = single_level(store, mean_);
  if (!level) throw InvalidMean("support spans more than one level");
  level_ = *level;
}

LevelMean uniform_level(TermStore& store, std::uint64_t p, const Limits& limits) {
  if (p <= limits.max_level && count_level(p, store.generators().size()) > limits.max_support) {
    throw CapExceeded("uniform mean on S_" + std::to_string(p) + " has " +
                      to_string(count_level(p, store.generators().size())) +
                      " terms, above the support cap " + std::to_string(limits.max_support));
  }
  const auto terms = enumerate_level(store, p, limits);
  const Rational w(1, terms.size());
  std::vector<std::pair<Term, Rational>> entries;
  entries.reserve(terms.size());
  for (Term t : terms) entries.emplace_back(t, w);
  return LevelMean(store, Mean::from_entries(entries));
}

Mean convolve(TermStore& store, const Mean& mu, const Mean& nu, const Limits& limits) {
  const std::size_t n = mu.support_size();
  const std::size_t m = nu.support_size();
  if (m != 0 && n > limits.max_support / m) {
    throw CapExceeded("convolution support " + std::to_string(n) + "x" + std::to_string(m) +
                      " exceeds cap " + std::to_string(limits.max_support));
  }
  Mean::Weights out;
  for (const auto& [s, ws] : mu.weights()) {
    for (const auto& [t, wt] : nu.weights()) {
      // products are pairwise distinct by freeness, so no accumulation needed
      out.emplace(store.node(s, t), ws * wt);
    }
  }
  return Mean(std::move(out));
}

LevelMean convolve(TermStore& store, const LevelMean& mu, const LevelMean& nu,
                   const Limits& limits) {
  return LevelMean(store, convolve(store, mu.mean(), nu.mean(), limits));
}

Rational measure_of(Classifier& classifier, const Mean& mu, const SetExpr& set) {
  Rational total;
  for (const auto& [t, w] : mu.weights()) {
    if (member(classifier, t, set)) total += w;
  }
  return total;
}

Rational fubini_measure(TermStore& store, Classifier& classifier, const Mean& mu,
                        const Mean& nu, const SetExpr& set) {
  Rational total;
  for (const auto& [s, ws] : mu.weights()) {
    Rational section;
    for (const auto& [t, wt] : nu.weights()) {
      if (member(classifier, store.node(s, t), set)) section += wt;
    }
    total += ws * section;
  }
  return total;
}

}  // namespace magma
