#include "magma/sequence.hpp"

#include "magma/error.hpp"

namespace magma {

MeanSequence::MeanSequence(std::string name, std::size_t prefix_bound, Generator generator,
                           bool permissive)
    : name_(std::move(name)),
      prefix_bound_(prefix_bound),
      generator_(std::move(generator)),
      permissive_(permissive) {}

const SequenceElement& MeanSequence::at(std::size_t i) {
  if (i >= prefix_bound_) {
    throw PrefixExhausted("index " + std::to_string(i) + " is beyond the materialized prefix of " +
                              name_ + " (prefix bound " + std::to_string(prefix_bound_) + ")",
                          i + 1);
  }
  while (elements_.size() <= i) {
    const std::size_t k = elements_.size();
    SequenceElement e = generator_(k);
    if (e.level == 0) throw InvalidMean(name_ + ": element " + std::to_string(k) + " has level 0");
    if (k > 0) {
      const std::uint64_t prev = elements_.back().level;
      if (e.level < prev || (!permissive_ && e.level == prev)) {
        throw InvalidMean(name_ + ": levels must increase " +
                          std::string(permissive_ ? "weakly" : "strictly") + " (index " +
                          std::to_string(k) + " has level " + std::to_string(e.level) +
                          " after " + std::to_string(prev) + ")");
      }
    }
    elements_.push_back(std::move(e));
  }
  return elements_[i];
}

MeanSequence uniform_levels(TermStore& store, std::size_t prefix_bound, const Limits& limits) {
  auto census = std::make_shared<UniformCensus>();
  auto generate = [&store, census, limits](std::size_t i) {
    const std::uint64_t n = i + 1;
    SequenceElement e{n, census->uniform_profile(n), std::nullopt};
    if (n <= limits.max_level && census->count(n) <= limits.max_support) {
      e.mean = uniform_level(store, n, limits).mean();
    }
    return e;
  };
  return MeanSequence("uniform-levels", prefix_bound, generate);
}

MeanSequence right_chains(TermStore& store, Classifier& classifier, std::size_t prefix_bound) {
  auto generate = [&store, &classifier](std::size_t i) {
    Mean m = Mean::point(right_chain(store, i + 1));
    return SequenceElement{i + 1, MeanProfile::of(classifier, m), std::move(m)};
  };
  return MeanSequence("right-chains", prefix_bound, generate);
}

MeanSequence explicit_sequence(Classifier& classifier, std::string name,
                               std::vector<LevelMean> means, bool permissive) {
  const std::size_t n = means.size();
  auto shared = std::make_shared<std::vector<LevelMean>>(std::move(means));
  auto generate = [&classifier, shared](std::size_t i) {
    const LevelMean& m = (*shared)[i];
    return SequenceElement{m.level(), MeanProfile::of(classifier, m.mean()), m.mean()};
  };
  return MeanSequence(std::move(name), n, generate, permissive);
}

}  // namespace magma
