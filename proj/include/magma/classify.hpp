#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "magma/term.hpp"

namespace magma {

/// Decides membership in Z and T_p, which are defined by mutual recursion on
/// the size of a term:
///
///   T_0 = S,  T_{p+1} = (S \ Z) * T_p,
///   s in Z  iff  s = a*b with b in T_{#a}.
///
/// Results are memoized per store: T by (term, p), Z by term. A classifier
/// is single-threaded; give each thread its own instance.
class Classifier {
 public:
  explicit Classifier(const TermStore& store) : store_(store) {}

  const TermStore& store() const noexcept { return store_; }

  bool in_T(Term t, std::uint64_t p);
  bool in_Z(Term t);

  /// Largest p with t in T_p. The T_p are nested, so t in T_p iff
  /// p <= t_depth(t).
  std::uint64_t t_depth(Term t);

 private:
  const TermStore& store_;
  std::vector<std::int8_t> z_memo_;
  std::vector<std::int64_t> depth_memo_;
  std::unordered_map<std::uint64_t, bool> t_memo_;
};

}  // namespace magma
