#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "magma/limits.hpp"
#include "magma/rational.hpp"

namespace magma {

/// Handle to an interned element of the free magma. Two handles from the same
/// store compare equal iff the terms are structurally equal.
struct Term {
  static constexpr std::uint32_t kInvalid = 0xffffffffu;
  std::uint32_t id = kInvalid;

  bool valid() const noexcept { return id != kInvalid; }
  friend auto operator<=>(Term, Term) = default;
};

/// Ordered, duplicate-free generator names. The default set is the single
/// generator "x".
class GeneratorSet {
 public:
  GeneratorSet();
  explicit GeneratorSet(std::vector<std::string> names);

  /// "x" for one generator, "g0", "g1", ... otherwise.
  static GeneratorSet indexed(std::size_t count);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t index) const { return names_.at(index); }
  std::optional<std::size_t> find(std::string_view name) const;

 private:
  std::vector<std::string> names_;
};

/// Hash-consing store for terms. Insertion is single-writer: callers that
/// share a store across threads must serialize calls to leaf() and node().
/// Read-only queries on existing handles are safe once no writer is active.
class TermStore {
 public:
  explicit TermStore(GeneratorSet generators = GeneratorSet());

  const GeneratorSet& generators() const noexcept { return generators_; }

  /// Throws std::invalid_argument for an unknown generator.
  Term leaf(std::size_t generator);
  Term node(Term left, Term right);

  /// The unique factorization t = a*b, or nullopt for generators.
  std::optional<std::pair<Term, Term>> decompose(Term t) const;

  /// The size homomorphism #: number of generator occurrences.
  std::uint64_t size(Term t) const { return at(t).size; }
  bool is_leaf(Term t) const { return at(t).size == 1; }
  std::size_t generator(Term t) const;

  std::size_t interned() const noexcept { return nodes_.size(); }

  /// Canonical structural order: by size, then left factor, then right
  /// factor; generators by index. Independent of interning order.
  bool structural_less(Term a, Term b) const;

 private:
  struct Node {
    Term left;
    Term right;
    std::uint64_t size;
    std::uint32_t generator;
  };

  const Node& at(Term t) const;

  GeneratorSet generators_;
  std::vector<Node> nodes_;
  std::vector<Term> leaves_;
  std::unordered_map<std::uint64_t, Term> products_;
};

/// All terms of size n, ordered by left-factor level ascending, then by the
/// left and right factors' own enumeration order. Throws CapExceeded when
/// n > limits.max_level and std::invalid_argument when n == 0.
std::vector<Term> enumerate_level(TermStore& store, std::uint64_t n,
                                  const Limits& limits = {});

/// |S_n| by the convolution recurrence |S_n| = sum_{i+j=n} |S_i||S_j|.
Integer count_level(std::uint64_t n, std::size_t generators = 1);

/// x for l = 1, x*right_chain(l-1) otherwise; uses generator 0.
Term right_chain(TermStore& store, std::uint64_t l);

/// term := GEN | "(" term "*" term ")"; whitespace between tokens is ignored.
Term parse_term(TermStore& store, std::string_view text);

/// Fully parenthesized canonical text.
std::string format_term(const TermStore& store, Term t);

}  // namespace magma

template <>
struct std::hash<magma::Term> {
  std::size_t operator()(magma::Term t) const noexcept {
    return std::hash<std::uint32_t>{}(t.id);
  }
};
