#include "magma/refutation.hpp"

#include <map>
#include <stdexcept>

#include "magma/error.hpp"
#include "magma/profile.hpp"

namespace magma {
namespace {

bool strictly_increasing(const std::vector<Index>& v) {
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (v[k] <= v[k - 1]) return false;
  }
  return true;
}

std::string describe(const TermStore& store, const Witness& w) {
  std::string s = format_term(store, w.skeleton);
  if (s.size() > 60) s = s.substr(0, 57) + "...";
  return "witness " + s + " (offset " + std::to_string(w.offset) + ")";
}

}  // namespace

Rational pick_r(MeanSequence& sequence, std::size_t window) {
  const std::size_t bound = sequence.prefix_bound();
  if (window == 0) throw std::invalid_argument("pick_r: empty window");
  if (window > bound) {
    throw std::invalid_argument("pick_r: window " + std::to_string(window) +
                                " exceeds prefix bound " + std::to_string(bound));
  }
  std::map<Rational, std::size_t> frequency;
  for (std::size_t i = bound - window; i < bound; ++i) ++frequency[sequence.z_value(i)];
  auto best = frequency.begin();
  for (auto it = frequency.begin(); it != frequency.end(); ++it) {
    if (it->second >= best->second) best = it;  // ascending keys: >= prefers larger
  }
  return best->first;
}

Rational choose_delta(const Rational& epsilon) {
  const Rational target = 1 - epsilon;
  const unsigned long scale = 1ul << 20;
  auto works = [&](unsigned long k) {
    const Rational one_minus = 1 - Rational(k, scale);
    return one_minus * one_minus > target;
  };
  unsigned long lo = 0;
  unsigned long hi = scale;
  while (lo < hi) {
    const unsigned long mid = (lo + hi + 1) / 2;
    if (works(mid)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  Rational delta(lo, scale);
  delta.canonicalize();
  const Rational half = epsilon / 2;
  return delta > half ? delta : half;
}

Refuter::Refuter(TermStore& store, Classifier& classifier, MeanSequence& sequence, Limits limits)
    : store_(store), classifier_(classifier), sequence_(sequence), limits_(limits) {}

std::vector<const MeanProfile*> Refuter::leaf_profiles(const std::vector<Index>& indices) {
  std::vector<const MeanProfile*> out;
  out.reserve(indices.size());
  for (Index i : indices) {
    if (i < 0) throw VerificationFailed("negative sequence index " + std::to_string(i));
    out.push_back(&sequence_.at(static_cast<std::size_t>(i)).profile);
  }
  return out;
}

Witness Refuter::make_witness(Term skeleton, std::vector<Index> indices, Index offset,
                              SetExpr target) {
  Witness w;
  w.skeleton = skeleton;
  w.offset = offset;
  w.target = std::move(target);
  std::size_t support = 1;
  bool materializable = true;
  for (Index i : indices) {
    const SequenceElement& e = sequence_.at(static_cast<std::size_t>(i));
    w.levels.push_back(e.level);
    w.result_level += e.level;
    if (!e.mean || support > limits_.max_support / e.mean->support_size()) {
      materializable = false;
    } else {
      support *= e.mean->support_size();
    }
  }
  w.indices = std::move(indices);
  ProfiledSubstitution eval(store_, skeleton, leaf_profiles(w.indices));
  w.value = eval.factorized(w.target);
  w.z_value = eval.factorized(SetExpr::z());
  if (materializable) {
    std::vector<Mean> means;
    for (Index i : w.indices) means.push_back(*sequence_.at(static_cast<std::size_t>(i)).mean);
    w.result = substitute(store_, skeleton, means, limits_);
  }
  return w;
}

Witness Refuter::construct_near_zero(Index m, const Rational& epsilon, const Rational& r,
                                     Index first_free) {
  if (sgn(epsilon) <= 0) throw std::invalid_argument("epsilon must be positive");
  if (sgn(r) < 0 || r > 1) throw std::invalid_argument("r must lie in [0, 1]");
  const Index bound = static_cast<Index>(sequence_.prefix_bound());
  const Index lo = std::max(m + 1, first_free);

  if (sgn(r) == 0) {
    for (Index i = lo; i < bound; ++i) {
      if (sequence_.z_value(static_cast<std::size_t>(i)) < epsilon) {
        return make_witness(store_.leaf(0), {i}, m, SetExpr::z());
      }
    }
    throw PrefixExhausted("no index >= " + std::to_string(lo) + " with Z-mass below " +
                              to_string(epsilon) + " within prefix bound " +
                              std::to_string(bound),
                          0);
  }

  // l with (1-r)^l < epsilon
  std::uint64_t l = 1;
  for (Rational decay = 1 - r; decay >= epsilon; decay *= 1 - r) ++l;
  if (lo + static_cast<Index>(l) > bound) {
    throw PrefixExhausted("near-zero construction needs indices up to " +
                              std::to_string(lo + static_cast<Index>(l) - 1) +
                              "; extend the prefix beyond " + std::to_string(bound),
                          static_cast<std::size_t>(lo) + l);
  }
  std::vector<Index> indices;
  std::uint64_t p = 0;
  for (std::uint64_t k = 0; k < l; ++k) {
    indices.push_back(lo + static_cast<Index>(k));
    p += sequence_.level(static_cast<std::size_t>(indices.back()));
  }

  // p + 1 further indices, each with (1 - mu_i(Z))^p < epsilon
  Rational product = 1;
  std::uint64_t chosen = 0;
  for (Index i = lo + static_cast<Index>(l); chosen < p + 1; ++i) {
    if (i >= bound) {
      throw PrefixExhausted("near-zero construction selected " + std::to_string(chosen) +
                                " of " + std::to_string(p + 1) +
                                " indices before prefix bound " + std::to_string(bound) +
                                "; extend the prefix to at least " +
                                std::to_string(bound + static_cast<Index>(p + 1 - chosen)),
                            static_cast<std::size_t>(bound) + (p + 1 - chosen));
    }
    const Rational factor = 1 - sequence_.z_value(static_cast<std::size_t>(i));
    if (power(factor, p) < epsilon) {
      indices.push_back(i);
      product *= factor;
      ++chosen;
    }
  }
  if (product >= epsilon) throw VerificationFailed("near-zero selection: factor product not below epsilon");

  const Term s = store_.node(right_chain(store_, l), right_chain(store_, p + 1));
  Witness w = make_witness(s, std::move(indices), m, SetExpr::z());
  if (w.value >= epsilon) {
    throw VerificationFailed("near-zero construction produced Z-mass " + to_string(w.value) +
                             " >= " + to_string(epsilon));
  }
  return w;
}

Witness Refuter::construct_T_concentrated(Index m, std::uint64_t p, const Rational& epsilon,
                                          const Rational& r, Index first_free) {
  if (sgn(epsilon) <= 0) throw std::invalid_argument("epsilon must be positive");
  if (p == 0) {
    const Index i = std::max(m + 1, first_free);
    sequence_.at(static_cast<std::size_t>(i));
    return make_witness(store_.leaf(0), {i}, m, SetExpr::t(0));
  }
  const Rational delta = choose_delta(epsilon);
  Witness u = construct_near_zero(m, delta, r, first_free);
  const Index a = static_cast<Index>(u.indices.size());
  Witness v = construct_T_concentrated(m + a, p - 1, delta, r, u.indices.back() + 1);
  std::vector<Index> indices = u.indices;
  indices.insert(indices.end(), v.indices.begin(), v.indices.end());
  Witness w = make_witness(store_.node(u.skeleton, v.skeleton), std::move(indices), m,
                           SetExpr::t(p));
  if (w.value <= 1 - epsilon) {
    throw VerificationFailed("T-concentration construction produced T_" + std::to_string(p) +
                             "-mass " + to_string(w.value) + " <= 1 - " + to_string(epsilon));
  }
  return w;
}

Witness Refuter::construct_near_one(const Rational& epsilon, const Rational& r) {
  if (sgn(epsilon) <= 0) throw std::invalid_argument("epsilon must be positive");
  const Index first = 1;
  const std::uint64_t p = sequence_.level(first);
  Witness t = construct_T_concentrated(first, p, epsilon, r, first + 1);
  std::vector<Index> indices{first};
  indices.insert(indices.end(), t.indices.begin(), t.indices.end());
  Witness w = make_witness(store_.node(store_.leaf(0), t.skeleton), std::move(indices), 0,
                           SetExpr::z());
  if (w.value <= 1 - epsilon) {
    throw VerificationFailed("near-one construction produced Z-mass " + to_string(w.value) +
                             " <= 1 - " + to_string(epsilon));
  }
  return w;
}

WitnessCheck Refuter::verify(const Witness& w) {
  WitnessCheck check;
  const std::string who = describe(store_, w);
  if (w.indices.size() != store_.size(w.skeleton)) {
    throw VerificationFailed(who + ": index list length does not match skeleton size");
  }
  if (!strictly_increasing(w.indices)) throw VerificationFailed(who + ": indices not strictly increasing");
  if (!is_admissible(store_, w.skeleton, w.indices, w.offset)) {
    throw VerificationFailed(who + ": indices are not admissible");
  }
  std::uint64_t level_sum = 0;
  for (std::size_t k = 0; k < w.indices.size(); ++k) {
    const std::uint64_t level = sequence_.level(static_cast<std::size_t>(w.indices[k]));
    if (w.levels.at(k) != level) throw VerificationFailed(who + ": recorded level mismatch");
    level_sum += level;
  }
  if (level_sum != w.result_level) throw VerificationFailed(who + ": result level is not the sum of levels");

  ProfiledSubstitution eval(store_, w.skeleton, leaf_profiles(w.indices));
  if (eval.pushforward(w.target) != w.value) {
    throw VerificationFailed(who + ": pushforward " + format_set_expr(store_, w.target) +
                             "-mass differs from recorded value");
  }
  const bool target_is_z = w.target.kind() == SetExpr::Kind::Z;
  if (!target_is_z && eval.pushforward(SetExpr::z()) != w.z_value) {
    throw VerificationFailed(who + ": pushforward Z-mass differs from recorded value");
  }
  if (target_is_z && w.z_value != w.value) throw VerificationFailed(who + ": inconsistent Z values");

  if (w.result) {
    check.materialized = true;
    if (single_level(store_, *w.result) != w.result_level) {
      throw VerificationFailed(who + ": materialized result has the wrong level");
    }
    if (measure_of(classifier_, *w.result, w.target) != w.value ||
        measure_of(classifier_, *w.result, SetExpr::z()) != w.z_value) {
      throw VerificationFailed(who + ": materialized result disagrees with recorded masses");
    }
    if (auto parts = store_.decompose(w.skeleton)) {
      const std::size_t a = store_.size(parts->first);
      std::vector<Mean> means;
      for (Index i : w.indices) means.push_back(*sequence_.at(static_cast<std::size_t>(i)).mean);
      const std::span<const Mean> all(means);
      const Mean left = substitute(store_, parts->first, all.first(a), limits_);
      const Mean right = substitute(store_, parts->second, all.subspan(a), limits_);
      if (fubini_measure(store_, classifier_, left, right, SetExpr::z()) != w.z_value) {
        throw VerificationFailed(who + ": iterated Z-mass disagrees with recorded value");
      }
    }
  }
  return check;
}

RefutationCertificate Refuter::refute(const Rational& epsilon, std::size_t window) {
  if (sgn(epsilon) <= 0 || epsilon >= Rational(1, 2)) {
    throw std::invalid_argument("epsilon must satisfy 0 < epsilon < 1/2, got " +
                                to_string(epsilon));
  }
  RefutationCertificate cert;
  cert.sequence = sequence_.name();
  cert.prefix_bound = sequence_.prefix_bound();
  cert.epsilon = epsilon;
  cert.r = pick_r(sequence_, window);
  cert.low = construct_near_zero(0, epsilon, cert.r);
  cert.high = construct_near_one(epsilon, cert.r);
  verify(cert.low);
  verify(cert.high);
  if (cert.low.offset != 0 || cert.high.offset != 0 || cert.low.z_value >= epsilon ||
      cert.high.z_value <= 1 - epsilon) {
    throw VerificationFailed("certificate witnesses do not straddle the epsilon window");
  }
  cert.verdict = "refuted: low witness has Z-mass < " + to_string(epsilon) +
                 " and high witness has Z-mass > " + to_string(1 - epsilon) +
                 ", so no r in [0,1] has both within " + to_string(epsilon);
  return cert;
}

nlohmann::json witness_to_json(const TermStore& store, MeanSequence& sequence,
                               const Witness& w) {
  auto z_values = nlohmann::json::array();
  for (Index i : w.indices) z_values.push_back(to_string(sequence.z_value(static_cast<std::size_t>(i))));
  return {
      {"skeleton", format_term(store, w.skeleton)},
      {"size", store.size(w.skeleton)},
      {"offset", w.offset},
      {"indices", w.indices},
      {"levels", w.levels},
      {"index_z_values", std::move(z_values)},
      {"result_level", w.result_level},
      {"target", format_set_expr(store, w.target)},
      {"value", to_string(w.value)},
      {"z_value", to_string(w.z_value)},
  };
}

nlohmann::json certificate_to_json(const TermStore& store, MeanSequence& sequence,
                                   const RefutationCertificate& c) {
  return {
      {"kind", "hindman-refutation"},
      {"sequence", c.sequence},
      {"prefix_bound", c.prefix_bound},
      {"epsilon", to_string(c.epsilon)},
      {"r", to_string(c.r)},
      {"low", witness_to_json(store, sequence, c.low)},
      {"high", witness_to_json(store, sequence, c.high)},
      {"verdict", c.verdict},
  };
}

CertificateCheck check_certificate(TermStore& store, MeanSequence& sequence,
                                   const nlohmann::json& doc) {
  CertificateCheck check;
  auto fail = [&](std::string what) {
    check.passed = false;
    check.failures.push_back(std::move(what));
  };
  try {
    if (doc.value("sequence", std::string()) != sequence.name()) {
      fail("certificate names sequence '" + doc.value("sequence", std::string()) +
           "' but was checked against '" + sequence.name() + "'");
    }
    const Rational epsilon = parse_rational(doc.at("epsilon").get<std::string>());
    if (sgn(epsilon) <= 0 || epsilon >= Rational(1, 2)) fail("epsilon outside (0, 1/2)");

    for (const char* side : {"low", "high"}) {
      const auto& w = doc.at(side);
      const std::string tag = side;
      const Term s = parse_term(store, w.at("skeleton").get<std::string>());
      const auto indices = w.at("indices").get<std::vector<Index>>();
      const auto levels = w.at("levels").get<std::vector<std::uint64_t>>();
      const auto z_values = w.at("index_z_values").get<std::vector<std::string>>();
      const Index offset = w.at("offset").get<Index>();
      const Rational z = parse_rational(w.at("z_value").get<std::string>());
      if (offset != 0) fail(tag + ": offset must be 0");
      if (indices.size() != store.size(s) || levels.size() != indices.size() ||
          z_values.size() != indices.size()) {
        fail(tag + ": index, level and value lists must match the skeleton size");
        continue;
      }
      if (!strictly_increasing(indices)) fail(tag + ": indices not strictly increasing");
      if (!is_admissible(store, s, indices, offset)) fail(tag + ": indices not admissible");
      std::vector<const MeanProfile*> leaves;
      std::uint64_t level_sum = 0;
      for (std::size_t k = 0; k < indices.size(); ++k) {
        if (indices[k] < 0) {
          fail(tag + ": negative index");
          break;
        }
        const auto& e = sequence.at(static_cast<std::size_t>(indices[k]));
        if (e.level != levels[k]) fail(tag + ": level mismatch at position " + std::to_string(k));
        if (parse_rational(z_values[k]) != e.profile.z_mass()) {
          fail(tag + ": index Z-value mismatch at position " + std::to_string(k));
        }
        level_sum += e.level;
        leaves.push_back(&e.profile);
      }
      if (leaves.size() != indices.size()) continue;
      if (level_sum != w.at("result_level").get<std::uint64_t>()) fail(tag + ": result level mismatch");
      ProfiledSubstitution eval(store, s, leaves);
      if (eval.pushforward(SetExpr::z()) != z) fail(tag + ": pushforward Z-mass differs");
      if (eval.factorized(SetExpr::z()) != z) fail(tag + ": factorized Z-mass differs");
      if (tag == "low" && z >= epsilon) fail("low: Z-mass not below epsilon");
      if (tag == "high" && z <= 1 - epsilon) fail("high: Z-mass not above 1 - epsilon");
    }
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("malformed certificate: ") + e.what());
  }
  return check;
}

}  // namespace magma
