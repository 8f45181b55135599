#include "magma/rational.hpp"

#include <cctype>

#include "magma/error.hpp"

namespace magma {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string original(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational result;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw SyntaxError("malformed rational '" + original + "'");
    }
    Integer d(std::string(den), 10);
    if (d == 0) throw SyntaxError("zero denominator in '" + original + "'");
    result = Rational(Integer(std::string(num), 10), d);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) {
      throw SyntaxError("malformed rational '" + original + "'");
    }
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Integer num(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    result = Rational(num, scale);
  } else {
    if (!all_digits(text)) throw SyntaxError("malformed rational '" + original + "'");
    result = Rational(Integer(std::string(text), 10));
  }
  result.canonicalize();
  if (negative) result = -result;
  return result;
}

std::string to_string(const Rational& value) {
  Rational reduced(value);
  reduced.canonicalize();
  return reduced.get_num().get_str() + "/" + reduced.get_den().get_str();
}

std::string to_string(const Integer& value) { return value.get_str(); }

Rational power(const Rational& base, std::uint64_t exponent) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  // base is canonical, so coprime powers stay canonical
  return Rational(num, den);
}

}  // namespace magma
