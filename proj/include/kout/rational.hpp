#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace kout {

/// Exact arbitrary-precision fraction. GMP keeps results of arithmetic in
/// canonical form (gcd(|num|, den) = 1, den > 0).
using Rational = mpq_class;

Rational make_rational(long numerator, long denominator = 1);

/// Parses "p/q" or "p" and returns the reduced value.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);

/// Always "p/q" with an explicit denominator.
std::string to_fraction_string(const Rational& value);

}  // namespace kout
