#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>

#include "magma/classify.hpp"
#include "magma/limits.hpp"
#include "magma/rational.hpp"
#include "magma/set_expr.hpp"
#include "magma/term.hpp"

namespace magma {

/// A finitely supported mean on S: strictly positive exact weights summing
/// to exactly 1.
class Mean {
 public:
  using Weights = std::map<Term, Rational>;

  /// Merges duplicate terms and drops zero weights. Throws InvalidMean on a
  /// negative weight or when the total mass is not exactly 1.
  static Mean from_entries(std::span<const std::pair<Term, Rational>> entries);
  static Mean point(Term t);

  const Weights& weights() const noexcept { return weights_; }
  std::size_t support_size() const noexcept { return weights_.size(); }
  Rational weight(Term t) const;

  friend bool operator==(const Mean& a, const Mean& b) { return a.weights_ == b.weights_; }

 private:
  explicit Mean(Weights weights) : weights_(std::move(weights)) {}
  Weights weights_;

  friend Mean convolve(TermStore&, const Mean&, const Mean&, const Limits&);
};

/// The common level of every support term, if there is one.
std::optional<std::uint64_t> single_level(const TermStore& store, const Mean& mean);

/// A mean supported on a single level S_p.
class LevelMean {
 public:
  /// Throws InvalidMean if the support spans more than one level.
  LevelMean(const TermStore& store, Mean mean);

  const Mean& mean() const noexcept { return mean_; }
  std::uint64_t level() const noexcept { return level_; }

 private:
  Mean mean_;
  std::uint64_t level_;
};

/// Equal weight on every term of S_p. Throws CapExceeded past limits.max_level.
LevelMean uniform_level(TermStore& store, std::uint64_t p, const Limits& limits = {});

/// (mu*nu)(u) = mu(a) nu(b) for u = a*b. Throws CapExceeded when the product
/// support would exceed limits.max_support.
Mean convolve(TermStore& store, const Mean& mu, const Mean& nu, const Limits& limits = {});
LevelMean convolve(TermStore& store, const LevelMean& mu, const LevelMean& nu,
                   const Limits& limits = {});

/// mu(A): total weight of the support terms in A.
Rational measure_of(Classifier& classifier, const Mean& mu, const SetExpr& set);

/// (mu*nu)(X) in iterated form: sum_s mu(s) nu({t : s*t in X}). Does not
/// build the convolution.
Rational fubini_measure(TermStore& store, Classifier& classifier, const Mean& mu,
                        const Mean& nu, const SetExpr& set);

}  // namespace magma
