#include "magma/classify.hpp"

namespace magma {

bool Classifier::in_T(Term t, std::uint64_t p) {
  if (p == 0) return true;
  // each step of the recursion strips a right factor, so T_p needs size > p
  if (store_.size(t) <= p) return false;
  const std::uint64_t key = (static_cast<std::uint64_t>(t.id) << 32) | p;
  if (auto it = t_memo_.find(key); it != t_memo_.end()) return it->second;
  auto [a, b] = *store_.decompose(t);
  const bool result = !in_Z(a) && in_T(b, p - 1);
  t_memo_.emplace(key, result);
  return result;
}

bool Classifier::in_Z(Term t) {
  if (t.id < z_memo_.size() && z_memo_[t.id] >= 0) return z_memo_[t.id] != 0;
  auto parts = store_.decompose(t);
  const bool result = parts && in_T(parts->second, store_.size(parts->first));
  if (z_memo_.size() <= t.id) z_memo_.resize(store_.interned(), -1);
  z_memo_[t.id] = result ? 1 : 0;
  return result;
}

std::uint64_t Classifier::t_depth(Term t) {
  if (t.id < depth_memo_.size() && depth_memo_[t.id] >= 0) {
    return static_cast<std::uint64_t>(depth_memo_[t.id]);
  }
  std::uint64_t depth = 0;
  if (auto parts = store_.decompose(t); parts && !in_Z(parts->first)) {
    depth = 1 + t_depth(parts->second);
  }
  if (depth_memo_.size() <= t.id) depth_memo_.resize(store_.interned(), -1);
  depth_memo_[t.id] = static_cast<std::int64_t>(depth);
  return depth;
}

}  // namespace magma
