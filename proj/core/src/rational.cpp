#include "zsym/rational.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cstdlib>
#include <stdexcept>

namespace zsym {

Rational pow_integer(const Rational& q, long e) {
  if (e == 0) return Rational(1);
  if (q == 0 && e < 0) throw std::domain_error("pow_integer: 0 to negative power");
  const unsigned long mag = static_cast<unsigned long>(e < 0 ? -e : e);
  Integer n = boost::multiprecision::pow(numer(q), static_cast<unsigned>(mag));
  Integer d = boost::multiprecision::pow(denom(q), static_cast<unsigned>(mag));
  if (e < 0) std::swap(n, d);
  return Rational(n, d);
}

namespace {

// Integer p-th root if exact.
std::optional<Integer> exact_root(const Integer& n, unsigned p) {
  if (n < 0) {
    if (p % 2 == 0) return std::nullopt;
    auto r = exact_root(-n, p);
    if (!r) return std::nullopt;
    return -*r;
  }
  if (n == 0 || n == 1 || p == 1) return n;
  Integer lo = 1, hi = n;
  while (lo <= hi) {
    Integer mid = (lo + hi) / 2;
    Integer v = boost::multiprecision::pow(mid, p);
    if (v == n) return mid;
    if (v < n)
      lo = mid + 1;
    else
      hi = mid - 1;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Rational> exact_rational_pow(const Rational& base, const Rational& exponent) {
  if (is_integer(exponent)) {
    if (base == 0 && exponent < 0) return std::nullopt;
    return pow_integer(base, static_cast<long>(numer(exponent)));
  }
  if (base == 0) return exponent > 0 ? std::optional<Rational>(Rational(0)) : std::nullopt;
  const Integer p = numer(exponent);
  const Integer q = denom(exponent);
  if (q > 64) return std::nullopt;  // no realistic exact root beyond this
  const unsigned root_deg = static_cast<unsigned>(q);
  auto rn = exact_root(numer(base), root_deg);
  auto rd = exact_root(denom(base), root_deg);
  if (!rn || !rd) return std::nullopt;
  Rational r(*rn, *rd);
  // |p| can be large in principle but is tiny for any expression we meet.
  return pow_integer(r, static_cast<long>(p));
}

std::string to_string(const Rational& q) {
  std::string s = numer(q).str();
  if (!is_integer(q)) {
    s += "/";
    s += denom(q).str();
  }
  return s;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::optional<Rational> rational_from_string(const std::string& text) {
  if (text.empty()) return std::nullopt;
  try {
    return Rational(text);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

Rational content_gcd(const Rational& a, const Rational& b) {
  if (a == 0) return boost::multiprecision::abs(b);
  if (b == 0) return boost::multiprecision::abs(a);
  Integer gn = boost::multiprecision::gcd(numer(a), numer(b));
  Integer gl = boost::multiprecision::lcm(denom(a), denom(b));
  return Rational(gn, gl);
}

}  // namespace zsym
