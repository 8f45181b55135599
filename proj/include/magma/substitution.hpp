#pragma once

#include <cstdint>
#include <span>

#include "magma/limits.hpp"
#include "magma/mean.hpp"
#include "magma/term.hpp"

namespace magma {

using Index = std::int64_t;

/// Admissibility of an index sequence for a skeleton term, after shifting
/// every index down by `offset`:
///
///   a generator is admissible for any length-1 sequence of positive values;
///   for s = u*v with #u = a, <j_k> is admissible iff <j_k | k < a> is
///   admissible for u and <j_k - a | a <= k> is admissible for v.
///
/// The shifted sequence is materialized at every step. Throws
/// std::invalid_argument if indices.size() != #s.
bool is_admissible(const TermStore& store, Term skeleton, std::span<const Index> indices,
                   Index offset = 0);

/// The cheap sufficient test "m <= i_0" for every skeleton in S_m. Throws
/// std::invalid_argument unless indices is strictly increasing.
bool check_sufficient(std::uint64_t level, std::span<const Index> indices);

/// s<mu_0, ..., mu_{n-1}>: replace the k-th generator occurrence of s by
/// means[k] and evaluate with convolution, left subtree first.
Mean substitute(TermStore& store, Term skeleton, std::span<const Mean> means,
                const Limits& limits = {});
LevelMean substitute(TermStore& store, Term skeleton, std::span<const LevelMean> means,
                     const Limits& limits = {});

}  // namespace magma
