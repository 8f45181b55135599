#include "magma/term.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_set>

#include "magma/error.hpp"

namespace magma {

GeneratorSet::GeneratorSet() : names_{"x"} {}

GeneratorSet::GeneratorSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw std::invalid_argument("generator set must be nonempty");
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw std::invalid_argument("empty generator name");
    if (!seen.insert(n).second) {
      throw std::invalid_argument("duplicate generator '" + n + "'");
    }
  }
}

GeneratorSet GeneratorSet::indexed(std::size_t count) {
  if (count == 1) return GeneratorSet();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < count; ++i) names.push_back("g" + std::to_string(i));
  return GeneratorSet(std::move(names));
}

std::optional<std::size_t> GeneratorSet::find(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

TermStore::TermStore(GeneratorSet generators) : generators_(std::move(generators)) {
  for (std::size_t g = 0; g < generators_.size(); ++g) {
    Term t{static_cast<std::uint32_t>(nodes_.size())};
    nodes_.push_back({Term{}, Term{}, 1, static_cast<std::uint32_t>(g)});
    leaves_.push_back(t);
  }
}

const TermStore::Node& TermStore::at(Term t) const {
  if (t.id >= nodes_.size()) throw std::out_of_range("invalid term handle");
  return nodes_[t.id];
}

Term TermStore::leaf(std::size_t generator) {
  if (generator >= leaves_.size()) {
    throw std::invalid_argument("unknown generator index " + std::to_string(generator));
  }
  return leaves_[generator];
}

Term TermStore::node(Term left, Term right) {
  const std::uint64_t size = at(left).size + at(right).size;
  const std::uint64_t key = (static_cast<std::uint64_t>(left.id) << 32) | right.id;
  auto [it, inserted] = products_.try_emplace(key, Term{});
  if (inserted) {
    if (nodes_.size() >= Term::kInvalid) throw CapExceeded("term store is full");
    it->second = Term{static_cast<std::uint32_t>(nodes_.size())};
    nodes_.push_back({left, right, size, 0});
  }
  return it->second;
}

std::optional<std::pair<Term, Term>> TermStore::decompose(Term t) const {
  const Node& n = at(t);
  if (n.size == 1) return std::nullopt;
  return std::pair{n.left, n.right};
}

std::size_t TermStore::generator(Term t) const {
  const Node& n = at(t);
  if (n.size != 1) throw std::invalid_argument("term is not a generator");
  return n.generator;
}

bool TermStore::structural_less(Term a, Term b) const {
  if (a == b) return false;
  const Node& na = at(a);
  const Node& nb = at(b);
  if (na.size != nb.size) return na.size < nb.size;
  if (na.size == 1) return na.generator < nb.generator;
  if (na.left != nb.left) return structural_less(na.left, nb.left);
  return structural_less(na.right, nb.right);
}

std::vector<Term> enumerate_level(TermStore& store, std::uint64_t n, const Limits& limits) {
  if (n == 0) throw std::invalid_argument("levels start at 1");
  if (n > limits.max_level) {
    throw CapExceeded("level " + std::to_string(n) + " exceeds enumeration cap " +
                      std::to_string(limits.max_level));
  }
  std::vector<std::vector<Term>> levels(n + 1);
  for (std::size_t g = 0; g < store.generators().size(); ++g) {
    levels[1].push_back(store.leaf(g));
  }
  for (std::uint64_t k = 2; k <= n; ++k) {
    for (std::uint64_t i = 1; i < k; ++i) {
      for (Term a : levels[i]) {
        for (Term b : levels[k - i]) levels[k].push_back(store.node(a, b));
      }
    }
  }
  return std::move(levels[n]);
}

Integer count_level(std::uint64_t n, std::size_t generators) {
  if (n == 0) throw std::invalid_argument("levels start at 1");
  std::vector<Integer> counts(n + 1);
  counts[1] = static_cast<unsigned long>(generators);
  for (std::uint64_t k = 2; k <= n; ++k) {
    for (std::uint64_t i = 1; i < k; ++i) counts[k] += counts[i] * counts[k - i];
  }
  return counts[n];
}

Term right_chain(TermStore& store, std::uint64_t l) {
  if (l == 0) throw std::invalid_argument("right_chain needs at least one factor");
  const Term x = store.leaf(0);
  Term chain = x;
  for (std::uint64_t k = 1; k < l; ++k) chain = store.node(x, chain);
  return chain;
}

namespace {

class TermParser {
 public:
  TermParser(TermStore& store, std::string_view text) : store_(store), text_(text) {}

  Term parse() {
    Term t = term();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  Term term() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == '(') {
      ++pos_;
      Term left = term();
      expect('*');
      Term right = term();
      expect(')');
      return store_.node(left, right);
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected generator or '('");
    auto name = text_.substr(start, pos_ - start);
    auto g = store_.generators().find(name);
    if (!g) throw SyntaxError("unknown generator '" + std::string(name) + "'", start);
    return store_.leaf(*g);
  }

  TermStore& store_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

void format_into(const TermStore& store, Term t, std::string& out) {
  if (auto parts = store.decompose(t)) {
    out += '(';
    format_into(store, parts->first, out);
    out += '*';
    format_into(store, parts->second, out);
    out += ')';
  } else {
    out += store.generators().name(store.generator(t));
  }
}

}  // namespace

Term parse_term(TermStore& store, std::string_view text) {
  return TermParser(store, text).parse();
}

std::string format_term(const TermStore& store, Term t) {
  std::string out;
  format_into(store, t, out);
  return out;
}

}  // namespace magma
