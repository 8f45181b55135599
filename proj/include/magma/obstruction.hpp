#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "magma/classify.hpp"
#include "magma/limits.hpp"
#include "magma/mean.hpp"
#include "magma/set_expr.hpp"

namespace magma {

/// sum_p mu(S_p) nu(T_p) over the levels carrying mu-mass; equals
/// (mu*nu)(Z) because Z is the disjoint union of the S_p * T_p.
Rational z_via_levels(Classifier& classifier, const Mean& mu, const Mean& nu);

/// {(mu*nu)(T_{p+1}), (1 - mu(Z)) nu(T_p)}; the two always agree. The left
/// side is evaluated on the materialized convolution.
std::pair<Rational, Rational> t_recursion(TermStore& store, Classifier& classifier,
                                          const Mean& mu, const Mean& nu, std::uint64_t p,
                                          const Limits& limits = {});

/// A set A with (mu*mu)(A) != mu(A), and gap = mu(A) - (mu*mu)(A).
struct Discrepancy {
  SetExpr set = SetExpr::gens();
  Rational gap;
};

/// A = S_1 u ... u S_n with n the top level of supp mu. mu(A) = 1 while
/// mu*mu puts mass mu(S_n)^2 > 0 on level 2n, so the gap is positive.
/// Throws std::invalid_argument for an empty mean.
Discrepancy discrepancy_witness(TermStore& store, Classifier& classifier, const Mean& mu);

/// One consequence of idempotence, evaluated on a concrete mean.
struct IdempotenceCheck {
  std::string statement;
  Rational expected;  // value forced if mu were idempotent
  Rational actual;
  bool holds = false;
};

struct ObstructionReport {
  std::size_t support_size = 0;
  std::uint64_t min_level = 0;
  std::uint64_t max_level = 0;
  std::uint64_t depth = 0;
  Rational r;                               // mu(Z)
  std::vector<Rational> level_mass;         // mu(S_k), k = 1..depth
  std::vector<Rational> square_level_mass;  // (mu*mu)(S_k)
  std::vector<Rational> level_convolution;  // sum_{i+j=k} mu(S_i) mu(S_j)
  std::vector<Rational> t_mass;             // mu(T_k), k = 0..depth
  std::vector<Rational> square_t_mass;      // (mu*mu)(T_k)
  Rational square_z;                        // (mu*mu)(Z), iterated
  Rational square_z_via_levels;             // sum_p mu(S_p) mu(T_p)
  // covering bound (mu*mu)(Z) <= head + tail_bound
  Rational covering_head;   // (mu*mu)(U_{k<depth} S_k * T_k)
  Rational covering_tail;   // (mu*mu)(U_{k>=depth} S_k * T_depth)
  Rational tail_bound;      // mu(S) mu(T_depth)
  bool covering_holds = false;
  std::vector<IdempotenceCheck> consequences;
  Discrepancy discrepancy;
};

/// Evaluates the chain of identities that rules out idempotent means on the
/// given mean, and records which idempotence consequences fail for it.
ObstructionReport walkthrough(TermStore& store, Classifier& classifier, const Mean& mu,
                              std::uint64_t depth = 6);

nlohmann::json report_to_json(const TermStore& store, const ObstructionReport& report);

}  // namespace magma
