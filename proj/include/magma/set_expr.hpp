#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "magma/classify.hpp"
#include "magma/term.hpp"

namespace magma {

/// Immutable description of a decidable subset of S.
///
/// Text syntax: I, S(n), T(p), Z, prod(A,B), not(A), union(A,...),
/// inter(A,...), set(term,...).
class SetExpr {
 public:
  enum class Kind { Gens, Level, T, Z, Product, Complement, Union, Intersection, Finite };

  static SetExpr gens();
  static SetExpr level(std::uint64_t n);
  static SetExpr t(std::uint64_t p);
  static SetExpr z();
  static SetExpr product(SetExpr left, SetExpr right);
  static SetExpr complement(SetExpr inner);
  static SetExpr unite(std::vector<SetExpr> parts);
  static SetExpr intersect(std::vector<SetExpr> parts);
  static SetExpr finite(std::vector<Term> terms);

  Kind kind() const noexcept;
  /// n for Level, p for T; 0 otherwise.
  std::uint64_t parameter() const noexcept;
  std::span<const SetExpr> operands() const noexcept;
  std::span<const Term> terms() const noexcept;

 private:
  struct Rep;
  SetExpr(Kind kind, std::uint64_t parameter = 0, std::vector<SetExpr> operands = {},
          std::vector<Term> terms = {});
  std::shared_ptr<const Rep> rep_;
};

/// Structural evaluation; Product uses the unique factorization of u.
bool member(Classifier& classifier, Term u, const SetExpr& set);

SetExpr parse_set_expr(TermStore& store, std::string_view text);
std::string format_set_expr(const TermStore& store, const SetExpr& set);

}  // namespace magma
