#include "magma/set_expr.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "magma/error.hpp"

namespace magma {

struct SetExpr::Rep {
  Kind kind;
  std::uint64_t parameter = 0;
  std::vector<SetExpr> operands;
  std::vector<Term> terms;
};

SetExpr::SetExpr(Kind kind, std::uint64_t parameter, std::vector<SetExpr> operands,
                 std::vector<Term> terms)
    : rep_(std::make_shared<const Rep>(
          Rep{kind, parameter, std::move(operands), std::move(terms)})) {}

SetExpr SetExpr::gens() { return SetExpr(Kind::Gens); }

SetExpr SetExpr::level(std::uint64_t n) {
  return SetExpr(Kind::Level, n);
}

SetExpr SetExpr::t(std::uint64_t p) { return SetExpr(Kind::T, p); }

SetExpr SetExpr::z() { return SetExpr(Kind::Z); }

SetExpr SetExpr::product(SetExpr left, SetExpr right) {
  return SetExpr(Kind::Product, 0, {std::move(left), std::move(right)});
}

SetExpr SetExpr::complement(SetExpr inner) {
  return SetExpr(Kind::Complement, 0, {std::move(inner)});
}

SetExpr SetExpr::unite(std::vector<SetExpr> parts) {
  return SetExpr(Kind::Union, 0, std::move(parts));
}

SetExpr SetExpr::intersect(std::vector<SetExpr> parts) {
  return SetExpr(Kind::Intersection, 0, std::move(parts));
}

SetExpr SetExpr::finite(std::vector<Term> terms) {
  return SetExpr(Kind::Finite, 0, {}, std::move(terms));
}

SetExpr::Kind SetExpr::kind() const noexcept { return rep_->kind; }
std::uint64_t SetExpr::parameter() const noexcept { return rep_->parameter; }
std::span<const SetExpr> SetExpr::operands() const noexcept { return rep_->operands; }
std::span<const Term> SetExpr::terms() const noexcept { return rep_->terms; }

bool member(Classifier& classifier, Term u, const SetExpr& set) {
  const TermStore& store = classifier.store();
  switch (set.kind()) {
    case SetExpr::Kind::Gens:
      return store.is_leaf(u);
    case SetExpr::Kind::Level:
      return store.size(u) == set.parameter();
    case SetExpr::Kind::T:
      return classifier.in_T(u, set.parameter());
    case SetExpr::Kind::Z:
      return classifier.in_Z(u);
    case SetExpr::Kind::Product: {
      auto parts = store.decompose(u);
      return parts && member(classifier, parts->first, set.operands()[0]) &&
             member(classifier, parts->second, set.operands()[1]);
    }
    case SetExpr::Kind::Complement:
      return !member(classifier, u, set.operands()[0]);
    case SetExpr::Kind::Union:
      return std::ranges::any_of(set.operands(),
                                 [&](const SetExpr& a) { return member(classifier, u, a); });
    case SetExpr::Kind::Intersection:
      return std::ranges::all_of(set.operands(),
                                 [&](const SetExpr& a) { return member(classifier, u, a); });
    case SetExpr::Kind::Finite:
      return std::ranges::find(set.terms(), u) != set.terms().end();
  }
  return false;
}

namespace {

class SetParser {
 public:
  SetParser(TermStore& store, std::string_view text) : store_(store), text_(text) {}

  SetExpr parse() {
    SetExpr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string word() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::uint64_t number() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a nonnegative integer");
    return std::stoull(std::string(text_.substr(start, pos_ - start)));
  }

  std::vector<SetExpr> list() {
    std::vector<SetExpr> parts;
    expect('(');
    if (accept(')')) return parts;
    do {
      parts.push_back(expr());
    } while (accept(','));
    expect(')');
    return parts;
  }

  // Terms contain no commas, so each argument runs to the next top-level ',' or ')'.
  std::vector<Term> term_list() {
    std::vector<Term> terms;
    expect('(');
    if (accept(')')) return terms;
    while (true) {
      const std::size_t start = pos_;
      int depth = 0;
      while (pos_ < text_.size()) {
        const char c = text_[pos_];
        if (depth == 0 && (c == ',' || c == ')')) break;
        if (c == '(') ++depth;
        if (c == ')') --depth;
        ++pos_;
      }
      try {
        terms.push_back(parse_term(store_, text_.substr(start, pos_ - start)));
      } catch (const SyntaxError& e) {
        throw SyntaxError(std::string("in set(...): ") + e.what(), start + e.position());
      }
      if (accept(',')) continue;
      expect(')');
      return terms;
    }
  }

  SetExpr expr() {
    const std::size_t start = pos_;
    const std::string w = word();
    if (w == "I") return SetExpr::gens();
    if (w == "Z") return SetExpr::z();
    if (w == "S" || w == "T") {
      expect('(');
      const std::uint64_t n = number();
      expect(')');
      if (w == "S") {
        if (n == 0) fail("levels start at 1");
        return SetExpr::level(n);
      }
      return SetExpr::t(n);
    }
    if (w == "prod") {
      auto parts = list();
      if (parts.size() != 2) throw SyntaxError("prod takes two operands", start);
      return SetExpr::product(parts[0], parts[1]);
    }
    if (w == "not") {
      auto parts = list();
      if (parts.size() != 1) throw SyntaxError("not takes one operand", start);
      return SetExpr::complement(parts[0]);
    }
    if (w == "union") return SetExpr::unite(list());
    if (w == "inter") return SetExpr::intersect(list());
    if (w == "set") return SetExpr::finite(term_list());
    pos_ = start;
    skip_space();
    fail(w.empty() ? "expected a set expression" : "unknown set constructor '" + w + "'");
  }

  TermStore& store_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

void join(const TermStore& store, std::span<const SetExpr> parts, std::string& out);

void format_into(const TermStore& store, const SetExpr& set, std::string& out) {
  switch (set.kind()) {
    case SetExpr::Kind::Gens: out += "I"; return;
    case SetExpr::Kind::Level: out += "S(" + std::to_string(set.parameter()) + ")"; return;
    case SetExpr::Kind::T: out += "T(" + std::to_string(set.parameter()) + ")"; return;
    case SetExpr::Kind::Z: out += "Z"; return;
    case SetExpr::Kind::Product: out += "prod"; break;
    case SetExpr::Kind::Complement: out += "not"; break;
    case SetExpr::Kind::Union: out += "union"; break;
    case SetExpr::Kind::Intersection: out += "inter"; break;
    case SetExpr::Kind::Finite: {
      out += "set(";
      bool first = true;
      for (Term t : set.terms()) {
        if (!first) out += ',';
        first = false;
        out += format_term(store, t);
      }
      out += ')';
      return;
    }
  }
  join(store, set.operands(), out);
}

void join(const TermStore& store, std::span<const SetExpr> parts, std::string& out) {
  out += '(';
  bool first = true;
  for (const auto& p : parts) {
    if (!first) out += ',';
    first = false;
    format_into(store, p, out);
  }
  out += ')';
}

}  // namespace

SetExpr parse_set_expr(TermStore& store, std::string_view text) {
  return SetParser(store, text).parse();
}

std::string format_set_expr(const TermStore& store, const SetExpr& set) {
  std::string out;
  format_into(store, set, out);
  return out;
}

}  // namespace magma
