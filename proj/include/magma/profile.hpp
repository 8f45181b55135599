#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "magma/classify.hpp"
#include "magma/mean.hpp"
#include "magma/rational.hpp"
#include "magma/set_expr.hpp"
#include "magma/term.hpp"

namespace magma {

/// Everything the Z / T_p classification needs to know about a term:
/// its size, whether it lies in Z, and the largest p with the term in T_p.
struct Signature {
  std::uint64_t level = 0;
  bool in_z = false;
  std::uint64_t t_depth = 0;

  friend auto operator<=>(const Signature&, const Signature&) = default;
};

/// Signature of a*b. T-depth of a*b is 0 if a is in Z and 1 + depth(b)
/// otherwise; a*b is in Z iff depth(b) >= #a.
Signature combine(const Signature& a, const Signature& b);

Signature signature_of(Classifier& classifier, Term t);

/// Exact statistics of a mean, sufficient to evaluate the Z, T_p, S_n and I
/// masses of any substitution built from it without materializing terms.
///
/// Holds both the marginals (level masses, Z mass, T_p masses) and the joint
/// signature distribution as integer counts over a common denominator.
class MeanProfile {
 public:
  /// Marginals via measure_of, joint via per-term signatures.
  static MeanProfile of(Classifier& classifier, const Mean& mean);
  /// Marginals derived from the joint counts.
  static MeanProfile from_counts(std::map<Signature, Integer> counts, Integer total);

  const std::map<std::uint64_t, Rational>& level_mass() const noexcept { return levels_; }
  const Rational& z_mass() const noexcept { return z_; }
  /// mu(T_p); 1 for p = 0.
  Rational t_mass(std::uint64_t p) const;
  std::uint64_t max_level() const noexcept;

  const std::map<Signature, Integer>& counts() const noexcept { return counts_; }
  const Integer& total() const noexcept { return total_; }

 private:
  std::map<std::uint64_t, Rational> levels_;
  Rational z_;
  std::vector<Rational> t_;  // t_[p], p >= 0, trailing zeros trimmed
  std::map<Signature, Integer> counts_;
  Integer total_;
};

/// Exact signature counts of each level S_n of the one-generator free magma,
/// by splitting every term at its root: for |a| = i, |b| = n - i the pair
/// (a in Z, depth(b)) fixes the signature of a*b.
class UniformCensus {
 public:
  UniformCensus();

  /// |S_n|.
  const Integer& count(std::uint64_t n);
  /// Number of terms of S_n in Z.
  const Integer& z_count(std::uint64_t n);
  std::map<Signature, Integer> signature_counts(std::uint64_t n);
  /// Profile of the uniform mean on S_n.
  MeanProfile uniform_profile(std::uint64_t n);

  std::uint64_t levels() const noexcept { return joint_.size() - 1; }

 private:
  void extend(std::uint64_t n);

  // joint_[n][z][d]: terms of size n with in_z == z and t_depth == d
  std::vector<std::array<std::vector<Integer>, 2>> joint_;
  std::vector<std::array<Integer, 2>> by_z_;
  std::vector<std::vector<Integer>> by_depth_;
  std::vector<Integer> total_;
};

/// s<mu_0, ..., mu_{n-1}> given only the profiles of the leaf means.
///
/// Two independent evaluations are offered for the targets Z, T(p), S(n)
/// and I:
///   factorized(): marginal recursion through the product identities
///       (mu*nu)(Z) = sum_q mu(S_q) nu(T_q),
///       (mu*nu)(T_{p+1}) = (1 - mu(Z)) nu(T_p),
///       (mu*nu)(S_n) = sum_{i+j=n} mu(S_i) nu(S_j);
///   pushforward(): the joint signature distribution of the result, built by
///       summing over all signature pairs of the two factors (iterated sum)
///       and classifying each pair with combine().
class ProfiledSubstitution {
 public:
  ProfiledSubstitution(const TermStore& store, Term skeleton,
                       std::vector<const MeanProfile*> leaves);

  Rational factorized(const SetExpr& target);
  Rational pushforward(const SetExpr& target);

  /// Distribution of the result's level.
  const std::map<std::uint64_t, Rational>& levels() { return level_dist(root_); }

 private:
  struct Slot {
    int left = -1;
    int right = -1;
    std::size_t leaf = 0;
    std::uint64_t max_level = 0;
  };
  struct Joint {
    std::map<Signature, Integer> counts;
    Integer total;
  };

  int build(const TermStore& store, Term t, std::size_t& next_leaf);
  const std::map<std::uint64_t, Rational>& level_dist(int slot);
  const Rational& z_of(int slot);
  Rational t_of(int slot, std::uint64_t p);
  Joint joint_of(int slot, std::uint64_t depth_cap);

  std::vector<const MeanProfile*> leaves_;
  std::vector<Slot> slots_;
  int root_ = -1;
  std::vector<std::optional<std::map<std::uint64_t, Rational>>> level_memo_;
  std::vector<std::optional<Rational>> z_memo_;
  std::vector<std::map<std::uint64_t, Rational>> t_memo_;
};

}  // namespace magma
