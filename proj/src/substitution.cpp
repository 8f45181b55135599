#include "magma/substitution.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#include "magma/error.hpp"

namespace magma {
namespace {

bool admissible_shifted(const TermStore& store, Term s, std::span<const Index> j) {
  auto parts = store.decompose(s);
  if (!parts) return j[0] >= 1;
  const std::size_t a = store.size(parts->first);
  if (!admissible_shifted(store, parts->first, j.first(a))) return false;
  std::vector<Index> rest(j.begin() + a, j.end());
  for (auto& v : rest) v -= static_cast<Index>(a);
  return admissible_shifted(store, parts->second, rest);
}

Mean substitute_range(TermStore& store, Term s, std::span<const Mean> means,
                      const Limits& limits) {
  auto parts = store.decompose(s);
  if (!parts) return means[0];
  const std::size_t a = store.size(parts->first);
  Mean left = substitute_range(store, parts->first, means.first(a), limits);
  Mean right = substitute_range(store, parts->second, means.subspan(a), limits);
  return convolve(store, left, right, limits);
}

}  // namespace

bool is_admissible(const TermStore& store, Term skeleton, std::span<const Index> indices,
                   Index offset) {
  if (indices.size() != store.size(skeleton)) {
    throw std::invalid_argument("index list has length " + std::to_string(indices.size()) +
                                " but the skeleton has size " +
                                std::to_string(store.size(skeleton)));
  }
  std::vector<Index> shifted(indices.begin(), indices.end());
  for (auto& v : shifted) v -= offset;
  return admissible_shifted(store, skeleton, shifted);
}

bool check_sufficient(std::uint64_t level, std::span<const Index> indices) {
  for (std::size_t k = 1; k < indices.size(); ++k) {
    if (indices[k] <= indices[k - 1]) {
      throw std::invalid_argument("index list is not strictly increasing");
    }
  }
  if (indices.empty()) throw std::invalid_argument("empty index list");
  return indices[0] >= static_cast<Index>(level);
}

Mean substitute(TermStore& store, Term skeleton, std::span<const Mean> means,
                const Limits& limits) {
  if (means.size() != store.size(skeleton)) {
    throw std::invalid_argument("got " + std::to_string(means.size()) +
                                " means for a skeleton of size " +
                                std::to_string(store.size(skeleton)));
  }
  std::size_t support = 1;
  for (const auto& m : means) {
    if (m.support_size() != 0 && support > limits.max_support / m.support_size()) {
      throw CapExceeded("substituted support exceeds cap " +
                        std::to_string(limits.max_support));
    }
    support *= m.support_size();
  }
  return substitute_range(store, skeleton, means, limits);
}

LevelMean substitute(TermStore& store, Term skeleton, std::span<const LevelMean> means,
                     const Limits& limits) {
  std::vector<Mean> plain;
  plain.reserve(means.size());
  for (const auto& m : means) plain.push_back(m.mean());
  return LevelMean(store, substitute(store, skeleton, plain, limits));
}

}  // namespace magma
