#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace magma {

using Integer = mpz_class;
/// Exact rational, always kept in lowest terms with a positive denominator.
using Rational = mpq_class;

/// Accepts "n", "n/d" and finite decimals such as "0.4"; the result is
/// canonicalized. Throws SyntaxError on anything else or a zero denominator.
Rational parse_rational(std::string_view text);

/// Serializes as "num/den", including integers ("1/1", "0/1").
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

Rational power(const Rational& base, std::uint64_t exponent);

}  // namespace magma
