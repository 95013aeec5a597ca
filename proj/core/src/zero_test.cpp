#include "expr_node.hpp"
#include "probe.hpp"
#include "zsym/errors.hpp"
#include "zsym/expr.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace zsym {

namespace {

double unit_double(std::mt19937_64& rng) {
  // deterministic across platforms: take 53 bits
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

}  // namespace

namespace detail {

/// Draws one admissible point: magnitudes in [0.5, 3.0], signed per the
/// symbol's domain assumption.
EvalPoint draw_point(const SymbolTable& symbols, std::mt19937_64& rng) {
  EvalPoint p;
  p.values.assign(symbols.size(), std::numeric_limits<double>::quiet_NaN());
  for (SymbolId id = 0; id < symbols.size(); ++id) {
    double mag = 0.5 + 2.5 * unit_double(rng);
    bool negative = false;
    switch (symbols.assumption(id).sign) {
      case Assumption::Sign::positive:
        break;
      case Assumption::Sign::negative:
        negative = true;
        break;
      case Assumption::Sign::nonzero:
      case Assumption::Sign::unconstrained:
        negative = (rng() & 1) != 0;
        break;
    }
    p.values[id] = negative ? -mag : mag;
  }
  return p;
}

}  // namespace detail

ZeroCheck check_zero(const Expr& e, const SymbolTable& symbols, std::uint64_t seed,
                     int min_points, double rel_tol) {
  detail::FracPtr f = detail::ExprAccess::frac(e);
  if (f->is_zero()) return ZeroCheck{true, Confidence::exact};
  if (f->is_rational()) return ZeroCheck{false, Confidence::exact};

  std::mt19937_64 rng(seed);
  int valid = 0;
  for (int attempt = 0; attempt < 64; ++attempt) {
    detail::EvalPoint p = detail::draw_point(symbols, rng);
    detail::EvalResult r;
    try {
      r = detail::frac_eval(*f, p);
    } catch (const SingularEvaluation&) {
      continue;  // resample
    }
    double scale = std::max(r.magnitude, 1e-300);
    // A sample clearly away from zero is a decisive witness; only the
    // "all samples vanish" verdict is merely numeric.
    if (std::abs(r.value) >= rel_tol * scale) return ZeroCheck{false, Confidence::exact};
    ++valid;
    if (valid >= min_points) return ZeroCheck{true, Confidence::numeric};
  }
  throw Error("check_zero: could not find enough admissible evaluation points (64 attempts)");
}

bool is_zero(const Expr& e, const SymbolTable& symbols, std::uint64_t seed) {
  return check_zero(e, symbols, seed).zero;
}

}  // namespace zsym
