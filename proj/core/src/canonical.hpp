#pragma once

// Canonical representation of scalar expressions: an expanded multivariate
// Laurent polynomial numerator over a factored denominator. Atoms are
// coordinates/parameters and kernel applications (exp, sin, cos, fractional
// powers of multi-term bases). Exact rational coefficients throughout.
//
// Invariants:
//  * Poly terms are sorted descending by monomial order, no zero coefficients.
//  * Monomial factors are sorted by atom order, exponents nonzero.
//  * Exp atom arguments are single-term fractions with coefficient 1; the
//    scalar multiple lives in the atom's exponent, so exp(u)*exp(v) and
//    exp(u+v) normalize identically.
//  * Sin/Cos arguments are sign-normalized (leading coefficient positive).
//  * Root atoms carry exponents strictly inside (0,1); integer parts are
//    expanded into the numerator or pushed to the denominator. Bases are
//    primitive (integer-coprime coefficients, positive leading term).
//  * Denominator factors are primitive multi-term polynomials with positive
//    integer exponents; single-term divisors fold into monomial exponents.

#include "zsym/rational.hpp"
#include "zsym/symbols.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace zsym::detail {

struct Frac;
using FracPtr = std::shared_ptr<const Frac>;

enum class KernelFn : std::uint8_t { exp_fn, sin_fn, cos_fn, root_fn };

struct Kernel {
  KernelFn fn;
  FracPtr arg;  // exp/sin/cos: argument; root: the base
};
using KernelPtr = std::shared_ptr<const Kernel>;

struct Atom {
  SymbolId symbol = kNoSymbol;
  std::shared_ptr<const std::string> name;  // symbol print name
  Assumption::Sign sign = Assumption::Sign::unconstrained;
  KernelPtr kernel;

  bool is_symbol() const { return symbol != kNoSymbol; }
  static Atom make_symbol(SymbolId id, std::shared_ptr<const std::string> name,
                          Assumption::Sign sign);
  static Atom make_kernel(KernelFn fn, FracPtr arg);
};

struct AtomPow {
  Atom atom;
  Rational exp;
};

struct Monomial {
  std::vector<AtomPow> factors;
  bool empty() const { return factors.empty(); }
};

struct Term {
  Rational coeff;
  Monomial mon;
};

struct Poly {
  std::vector<Term> terms;
  bool is_zero() const { return terms.empty(); }
  bool is_constant() const { return terms.empty() || (terms.size() == 1 && terms[0].mon.empty()); }
  Rational constant_value() const;  // requires is_constant()
};

struct FactorPow {
  Poly base;  // primitive, multi-term
  int exp;    // >= 1
};

struct Frac {
  Poly num;
  std::vector<FactorPow> den;

  bool is_zero() const { return num.is_zero(); }
  bool is_rational() const { return den.empty() && num.is_constant(); }
};

// --- total orders / equality -------------------------------------------------

int compare(const Atom& a, const Atom& b);
int compare(const Monomial& a, const Monomial& b);  // graded-lex
int compare(const Term& a, const Term& b);
int compare(const Poly& a, const Poly& b);
int compare(const Frac& a, const Frac& b);
inline bool equal(const Frac& a, const Frac& b) { return compare(a, b) == 0; }

// --- constructors ------------------------------------------------------------

Frac frac_rational(const Rational& c);
Frac frac_symbol(SymbolId id, const std::string& name, Assumption::Sign sign);
Frac frac_from_poly(Poly p);

// --- arithmetic ---------------------------------------------------------------

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_neg(const Poly& a);
Poly poly_scale(const Poly& a, const Rational& c);
Frac poly_mul(const Poly& a, const Poly& b);
Frac poly_pow(const Poly& a, int e);  // e >= 0

Frac frac_add(const Frac& a, const Frac& b);
Frac frac_neg(const Frac& a);
Frac frac_sub(const Frac& a, const Frac& b);
Frac frac_mul(const Frac& a, const Frac& b);
Frac frac_div(const Frac& a, const Frac& b);  // throws on division by zero
Frac frac_pow(const Frac& a, const Rational& e);

/// exp/sin/cos of a canonical fraction.
Frac frac_exp(const Frac& u);
Frac frac_sin(const Frac& u);
Frac frac_cos(const Frac& u);

/// Partial derivative with respect to symbol v.
Frac frac_diff(const Frac& f, SymbolId v);

/// Exact polynomial division; nullopt when not exactly divisible.
std::optional<Poly> poly_div_exact(const Poly& dividend, const Poly& divisor);

// --- numerics ----------------------------------------------------------------

struct EvalPoint {
  // indexed by SymbolId; NaN means unassigned
  std::vector<double> values;
  double get(SymbolId id) const;
};

struct EvalResult {
  double value;
  double magnitude;  // sum of absolute term magnitudes, denominator applied
};

/// Evaluates with a cancellation-aware magnitude estimate.
/// Throws SingularEvaluation on domain errors.
EvalResult frac_eval(const Frac& f, const EvalPoint& p);

double pow_real(double base, const Rational& e);  // throws SingularEvaluation

}  // namespace zsym::detail
