#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace zsym {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numer(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denom(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denom(q) == 1; }

/// Exact q^e for integer e (e < 0 requires q != 0).
Rational pow_integer(const Rational& q, long e);

/// Exact rational root: returns q^(p/q_exp) when it is rational, e.g. 4^(1/2) = 2.
/// Exponent must be in lowest terms. Negative bases only succeed for odd root degrees.
std::optional<Rational> exact_rational_pow(const Rational& base, const Rational& exponent);

/// Renders "p" or "p/q".
std::string to_string(const Rational& q);

double to_double(const Rational& q);

/// Parses "p" or "p/q" (no sign handling beyond a leading '-').
std::optional<Rational> rational_from_string(const std::string& text);

/// gcd of two rationals in the content sense: gcd(a/b, c/d) = gcd(a,c)/lcm(b,d).
Rational content_gcd(const Rational& a, const Rational& b);

}  // namespace zsym
