#pragma once

// Exact arithmetic used throughout: arbitrary-precision integers and
// rationals (GMP through Boost.Multiprecision).

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace qft {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Parses "p/q", "p" or a decimal-free signed integer. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// "p/q" with q > 0, or "p" when q == 1.
std::string to_string(const Rational& r);
std::string to_string(const BigInt& n);

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

/// Natural logarithm of a positive big integer without overflowing double.
double log_of(const BigInt& n);

/// Integer power of a small base.
BigInt pow_big(long base, unsigned exponent);

}  // namespace qft
