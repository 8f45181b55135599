#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "magma/classify.hpp"
#include "magma/limits.hpp"
#include "magma/mean.hpp"
#include "magma/profile.hpp"

namespace magma {

/// One element mu_i of a mean sequence. `mean` is present only when the
/// element is small enough to materialize; `profile` is always exact.
struct SequenceElement {
  std::uint64_t level = 0;
  MeanProfile profile;
  std::optional<Mean> mean;
};

/// A finite prefix <mu_i | i < prefix_bound> of a sequence of single-level
/// means. Elements are generated on first access, in index order, and the
/// levels are checked to increase strictly (or weakly, when permissive).
class MeanSequence {
 public:
  using Generator = std::function<SequenceElement(std::size_t)>;

  MeanSequence(std::string name, std::size_t prefix_bound, Generator generator,
               bool permissive = false);

  const std::string& name() const noexcept { return name_; }
  std::size_t prefix_bound() const noexcept { return prefix_bound_; }

  /// Throws PrefixExhausted for i >= prefix_bound(), InvalidMean when the
  /// level order is violated.
  const SequenceElement& at(std::size_t i);
  std::uint64_t level(std::size_t i) { return at(i).level; }
  const Rational& z_value(std::size_t i) { return at(i).profile.z_mass(); }

 private:
  std::string name_;
  std::size_t prefix_bound_;
  Generator generator_;
  bool permissive_;
  std::deque<SequenceElement> elements_;
};

/// mu_i = uniform mean on S_{i+1}. Profiles come from the exact census, so
/// levels far beyond the enumeration cap are available; means are
/// materialized while the level and support fit `limits`.
MeanSequence uniform_levels(TermStore& store, std::size_t prefix_bound,
                            const Limits& limits = {});

/// mu_i = point mass on right_chain(i+1).
MeanSequence right_chains(TermStore& store, Classifier& classifier, std::size_t prefix_bound);

/// A sequence given explicitly; prefix_bound is means.size().
MeanSequence explicit_sequence(Classifier& classifier, std::string name,
                               std::vector<LevelMean> means, bool permissive = false);

}  // namespace magma
