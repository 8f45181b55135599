#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "magma/classify.hpp"
#include "magma/limits.hpp"
#include "magma/mean.hpp"
#include "magma/sequence.hpp"
#include "magma/set_expr.hpp"
#include "magma/substitution.hpp"

namespace magma {

/// A substitution instance s<mu_{i_k} | k < n> together with the exact mass
/// its result assigns to `target` (Z or some T_p) and to Z.
struct Witness {
  Term skeleton;
  std::vector<Index> indices;
  Index offset = 0;
  std::vector<std::uint64_t> levels;
  std::uint64_t result_level = 0;
  SetExpr target = SetExpr::z();
  Rational value;
  Rational z_value;
  /// The substituted mean itself, when its support fits the caps.
  std::optional<Mean> result;
};

/// Two offset-0 witnesses whose Z-masses sit below epsilon and above
/// 1 - epsilon, so no r has both within epsilon.
struct RefutationCertificate {
  std::string sequence;
  std::size_t prefix_bound = 0;
  Rational epsilon;
  Rational r;
  Witness low;
  Witness high;
  std::string verdict;
};

/// What verify() actually re-evaluated.
struct WitnessCheck {
  bool materialized = false;
};

/// Stand-in for an accumulation point of <mu_i(Z)>: the value attained most
/// often among the last `window` indices of the prefix, ties broken toward
/// the larger value. Throws std::invalid_argument for an empty or oversized
/// window.
Rational pick_r(MeanSequence& sequence, std::size_t window);

/// A delta with (1 - delta)^2 > 1 - epsilon: the largest k/2^20 that works,
/// and never below epsilon/2.
Rational choose_delta(const Rational& epsilon);

/// Executes the near-zero, T-concentration and near-one constructions over a
/// materialized prefix. Every index list produced is strictly increasing; the
/// `first_free` arguments bound the next usable index from below.
class Refuter {
 public:
  Refuter(TermStore& store, Classifier& classifier, MeanSequence& sequence, Limits limits = {});

  /// s with <i_k - m> admissible and s<mu_{i_k}>(Z) < epsilon.
  Witness construct_near_zero(Index m, const Rational& epsilon, const Rational& r,
                              Index first_free = 0);
  /// s with <i_k - m> admissible and s<mu_{i_k}>(T_p) > 1 - epsilon.
  Witness construct_T_concentrated(Index m, std::uint64_t p, const Rational& epsilon,
                                   const Rational& r, Index first_free = 0);
  /// s = x * t with offset-0 admissible indices and s<mu_{i_k}>(Z) > 1 - epsilon.
  /// The leading index is 1, the least value a generator accepts.
  Witness construct_near_one(const Rational& epsilon, const Rational& r);

  /// Requires 0 < epsilon < 1/2; both witnesses are verified before return.
  RefutationCertificate refute(const Rational& epsilon, std::size_t window);

  /// Re-checks admissibility, index order, level bookkeeping and the stored
  /// masses through the pushforward route (and the materialized mean when
  /// present). Throws VerificationFailed.
  WitnessCheck verify(const Witness& witness);

 private:
  Witness make_witness(Term skeleton, std::vector<Index> indices, Index offset, SetExpr target);
  std::vector<const MeanProfile*> leaf_profiles(const std::vector<Index>& indices);

  TermStore& store_;
  Classifier& classifier_;
  MeanSequence& sequence_;
  Limits limits_;
};

nlohmann::json witness_to_json(const TermStore& store, MeanSequence& sequence,
                               const Witness& witness);
nlohmann::json certificate_to_json(const TermStore& store, MeanSequence& sequence,
                                   const RefutationCertificate& certificate);

struct CertificateCheck {
  bool passed = true;
  std::vector<std::string> failures;
};

/// Re-verifies an emitted certificate from its document alone against the
/// given sequence; recomputes every mass through both profiled routes.
CertificateCheck check_certificate(TermStore& store, MeanSequence& sequence,
                                   const nlohmann::json& document);

}  // namespace magma
