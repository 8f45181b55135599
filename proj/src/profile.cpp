#include "magma/profile.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace magma {
namespace {

Rational ratio(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

Signature combine(const Signature& a, const Signature& b) {
  return Signature{a.level + b.level, b.t_depth >= a.level, a.in_z ? 0 : b.t_depth + 1};
}

Signature signature_of(Classifier& classifier, Term t) {
  return Signature{classifier.store().size(t), classifier.in_Z(t), classifier.t_depth(t)};
}

MeanProfile MeanProfile::of(Classifier& classifier, const Mean& mean) {
  MeanProfile profile;
  const TermStore& store = classifier.store();
  std::set<std::uint64_t> levels;
  for (const auto& [t, w] : mean.weights()) levels.insert(store.size(t));
  for (std::uint64_t n : levels) profile.levels_[n] = measure_of(classifier, mean, SetExpr::level(n));
  profile.z_ = measure_of(classifier, mean, SetExpr::z());
  const std::uint64_t top = levels.empty() ? 0 : *levels.rbegin();
  for (std::uint64_t p = 0; p < top; ++p) {
    profile.t_.push_back(measure_of(classifier, mean, SetExpr::t(p)));
  }
  while (profile.t_.size() > 1 && profile.t_.back() == 0) profile.t_.pop_back();

  Integer common = 1;
  for (const auto& [t, w] : mean.weights()) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), w.get_den_mpz_t());
  for (const auto& [t, w] : mean.weights()) {
    Integer scaled = w.get_num() * (common / w.get_den());
    profile.counts_[signature_of(classifier, t)] += scaled;
  }
  profile.total_ = common;
  return profile;
}

MeanProfile MeanProfile::from_counts(std::map<Signature, Integer> counts, Integer total) {
  MeanProfile profile;
  std::map<std::uint64_t, Integer> level_counts;
  Integer z_count;
  std::vector<Integer> depth_counts;
  for (const auto& [sig, c] : counts) {
    level_counts[sig.level] += c;
    if (sig.in_z) z_count += c;
    if (depth_counts.size() <= sig.t_depth) depth_counts.resize(sig.t_depth + 1);
    depth_counts[sig.t_depth] += c;
  }
  for (const auto& [n, c] : level_counts) {
    if (c != 0) profile.levels_[n] = ratio(c, total);
  }
  profile.z_ = ratio(z_count, total);
  // mu(T_p) = mass of depth >= p
  Integer tail;
  profile.t_.resize(std::max<std::size_t>(depth_counts.size(), 1));
  for (std::size_t d = depth_counts.size(); d-- > 0;) {
    tail += depth_counts[d];
    profile.t_[d] = ratio(tail, total);
  }
  if (depth_counts.empty()) profile.t_[0] = 1;
  while (profile.t_.size() > 1 && profile.t_.back() == 0) profile.t_.pop_back();
  profile.counts_ = std::move(counts);
  profile.total_ = std::move(total);
  return profile;
}

Rational MeanProfile::t_mass(std::uint64_t p) const {
  if (p == 0) return 1;
  return p < t_.size() ? t_[p] : Rational(0);
}

std::uint64_t MeanProfile::max_level() const noexcept {
  return levels_.empty() ? 0 : levels_.rbegin()->first;
}

UniformCensus::UniformCensus() {
  joint_.resize(2);
  by_z_.resize(2);
  by_depth_.resize(2);
  total_.resize(2);
  joint_[1][0] = {Integer(1)};
  joint_[1][1] = {Integer(0)};
  by_z_[1] = {Integer(1), Integer(0)};
  by_depth_[1] = {Integer(1)};
  total_[1] = 1;
}

void UniformCensus::extend(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("levels start at 1");
  for (std::uint64_t k = joint_.size(); k <= n; ++k) {
    std::array<std::vector<Integer>, 2> joint{std::vector<Integer>(k), std::vector<Integer>(k)};
    Integer tail;
    Integer below;
    for (std::uint64_t i = 1; i < k; ++i) {
      const std::uint64_t j = k - i;
      const auto& left = by_z_[i];
      const auto& right = by_depth_[j];
      // a*b with a in Z has depth 0; it lies in Z iff depth(b) >= #a.
      tail = 0;
      for (std::uint64_t d = i; d < j; ++d) tail += right[d];
      below = total_[j] - tail;
      mpz_addmul(joint[1][0].get_mpz_t(), left[1].get_mpz_t(), tail.get_mpz_t());
      mpz_addmul(joint[0][0].get_mpz_t(), left[1].get_mpz_t(), below.get_mpz_t());
      for (std::uint64_t d = 0; d < j; ++d) {
        const Integer& w = right[d];
        if (w == 0) continue;
        mpz_addmul(joint[d >= i ? 1 : 0][d + 1].get_mpz_t(), left[0].get_mpz_t(), w.get_mpz_t());
      }
    }
    std::array<Integer, 2> z_split;
    std::vector<Integer> depth(k);
    for (int z = 0; z < 2; ++z) {
      for (std::uint64_t d = 0; d < k; ++d) {
        z_split[z] += joint[z][d];
        depth[d] += joint[z][d];
      }
    }
    total_.push_back(z_split[0] + z_split[1]);
    by_z_.push_back(std::move(z_split));
    by_depth_.push_back(std::move(depth));
    joint_.push_back(std::move(joint));
  }
}

const Integer& UniformCensus::count(std::uint64_t n) {
  extend(n);
  return total_[n];
}

const Integer& UniformCensus::z_count(std::uint64_t n) {
  extend(n);
  return by_z_[n][1];
}

std::map<Signature, Integer> UniformCensus::signature_counts(std::uint64_t n) {
  extend(n);
  std::map<Signature, Integer> out;
  for (int z = 0; z < 2; ++z) {
    for (std::uint64_t d = 0; d < n; ++d) {
      if (joint_[n][z][d] != 0) out[Signature{n, z == 1, d}] = joint_[n][z][d];
    }
  }
  return out;
}

MeanProfile UniformCensus::uniform_profile(std::uint64_t n) {
  return MeanProfile::from_counts(signature_counts(n), count(n));
}

ProfiledSubstitution::ProfiledSubstitution(const TermStore& store, Term skeleton,
                                           std::vector<const MeanProfile*> leaves)
    : leaves_(std::move(leaves)) {
  if (leaves_.size() != store.size(skeleton)) {
    throw std::invalid_argument("got " + std::to_string(leaves_.size()) +
                                " leaf profiles for a skeleton of size " +
                                std::to_string(store.size(skeleton)));
  }
  std::size_t next_leaf = 0;
  root_ = build(store, skeleton, next_leaf);
  level_memo_.resize(slots_.size());
  z_memo_.resize(slots_.size());
  t_memo_.resize(slots_.size());
}

int ProfiledSubstitution::build(const TermStore& store, Term t, std::size_t& next_leaf) {
  const int index = static_cast<int>(slots_.size());
  slots_.emplace_back();
  if (auto parts = store.decompose(t)) {
    const int left = build(store, parts->first, next_leaf);
    const int right = build(store, parts->second, next_leaf);
    slots_[index].left = left;
    slots_[index].right = right;
    slots_[index].max_level = slots_[left].max_level + slots_[right].max_level;
  } else {
    slots_[index].leaf = next_leaf;
    slots_[index].max_level = leaves_[next_leaf]->max_level();
    ++next_leaf;
  }
  return index;
}

const std::map<std::uint64_t, Rational>& ProfiledSubstitution::level_dist(int slot) {
  auto& memo = level_memo_[slot];
  if (memo) return *memo;
  const Slot& s = slots_[slot];
  if (s.left < 0) {
    memo = leaves_[s.leaf]->level_mass();
  } else {
    std::map<std::uint64_t, Rational> out;
    const auto& left = level_dist(s.left);
    const auto& right = level_dist(s.right);
    for (const auto& [i, wi] : left) {
      for (const auto& [j, wj] : right) out[i + j] += wi * wj;
    }
    memo = std::move(out);
  }
  return *memo;
}

const Rational& ProfiledSubstitution::z_of(int slot) {
  auto& memo = z_memo_[slot];
  if (memo) return *memo;
  const Slot& s = slots_[slot];
  if (s.left < 0) {
    memo = leaves_[s.leaf]->z_mass();
  } else {
    Rational total;
    for (const auto& [q, w] : level_dist(s.left)) total += w * t_of(s.right, q);
    memo = std::move(total);
  }
  return *memo;
}

Rational ProfiledSubstitution::t_of(int slot, std::uint64_t p) {
  if (p == 0) return 1;
  const Slot& s = slots_[slot];
  if (s.left < 0) return leaves_[s.leaf]->t_mass(p);
  auto& memo = t_memo_[slot];
  if (auto it = memo.find(p); it != memo.end()) return it->second;
  Rational value = (1 - z_of(s.left)) * t_of(s.right, p - 1);
  t_memo_[slot].emplace(p, value);
  return value;
}

ProfiledSubstitution::Joint ProfiledSubstitution::joint_of(int slot, std::uint64_t depth_cap) {
  const Slot& s = slots_[slot];
  Joint out;
  if (s.left < 0) {
    const MeanProfile& leaf = *leaves_[s.leaf];
    for (const auto& [sig, c] : leaf.counts()) {
      Signature clamped = sig;
      clamped.t_depth = std::min(sig.t_depth, depth_cap);
      out.counts[clamped] += c;
    }
    out.total = leaf.total();
    return out;
  }
  // The parent reads only in_z from the left factor; from the right factor
  // it needs depth up to depth_cap - 1 and the comparison depth >= #left.
  const std::uint64_t right_cap =
      std::max(depth_cap > 0 ? depth_cap - 1 : 0, slots_[s.left].max_level);
  const Joint left = joint_of(s.left, 0);
  const Joint right = joint_of(s.right, right_cap);
  for (const auto& [sa, ca] : left.counts) {
    for (const auto& [sb, cb] : right.counts) {
      Signature sig = combine(sa, sb);
      sig.t_depth = std::min(sig.t_depth, depth_cap);
      Integer& slot_count = out.counts[sig];
      mpz_addmul(slot_count.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    }
  }
  out.total = left.total * right.total;
  return out;
}

Rational ProfiledSubstitution::factorized(const SetExpr& target) {
  switch (target.kind()) {
    case SetExpr::Kind::Z:
      return z_of(root_);
    case SetExpr::Kind::T:
      return t_of(root_, target.parameter());
    case SetExpr::Kind::Level:
    case SetExpr::Kind::Gens: {
      const std::uint64_t n = target.kind() == SetExpr::Kind::Gens ? 1 : target.parameter();
      const auto& dist = level_dist(root_);
      auto it = dist.find(n);
      return it == dist.end() ? Rational(0) : it->second;
    }
    default:
      throw std::invalid_argument("profiled evaluation supports only I, S(n), T(p) and Z");
  }
}

Rational ProfiledSubstitution::pushforward(const SetExpr& target) {
  const auto kind = target.kind();
  if (kind != SetExpr::Kind::Z && kind != SetExpr::Kind::T && kind != SetExpr::Kind::Level &&
      kind != SetExpr::Kind::Gens) {
    throw std::invalid_argument("profiled evaluation supports only I, S(n), T(p) and Z");
  }
  const std::uint64_t cap = kind == SetExpr::Kind::T ? target.parameter() : 0;
  const Joint joint = joint_of(root_, cap);
  Integer hits;
  for (const auto& [sig, c] : joint.counts) {
    bool in = false;
    switch (kind) {
      case SetExpr::Kind::Z: in = sig.in_z; break;
      case SetExpr::Kind::T: in = sig.t_depth >= target.parameter(); break;
      case SetExpr::Kind::Level: in = sig.level == target.parameter(); break;
      default: in = sig.level == 1; break;
    }
    if (in) hits += c;
  }
  return ratio(hits, joint.total);
}

}  // namespace magma
