#pragma once

#include "zsym/rational.hpp"
#include "zsym/symbols.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace zsym {

namespace detail {
struct Node;
struct Frac;
struct ExprAccess;
}  // namespace detail

enum class ExprKind : std::uint8_t { rational, symbol, sum, product, power, call };
enum class CallFn : std::uint8_t { exp, sqrt, sin, cos };

/// Immutable symbolic expression: exact rational constants, symbols, sums,
/// products, rational powers, and exp/sqrt/sin/cos kernels. Arithmetic
/// operators return canonically normalized values; the node builders below
/// construct explicit trees (the parser's output before normalization).
class Expr {
 public:
  Expr();  // the zero constant

  static Expr rational(Rational value);
  static Expr integer(long value);

  // structural builders; no simplification
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr power(Expr base, Rational exponent);
  static Expr call(CallFn fn, Expr argument);

  ExprKind kind() const;
  const Rational& rational_value() const;
  SymbolId symbol() const;
  const std::string& symbol_name() const;
  const std::vector<Expr>& children() const;
  const Rational& exponent() const;
  CallFn call_fn() const;

  /// True when this tree is the canonical rebuild of its own normal form.
  bool is_normalized() const;
  bool is_rational_constant() const { return kind() == ExprKind::rational; }
  bool is_zero_constant() const {
    return kind() == ExprKind::rational && rational_value() == 0;
  }

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr operator-() const;

  /// Structural equality.
  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

 private:
  explicit Expr(std::shared_ptr<const detail::Node> node);
  std::shared_ptr<const detail::Node> node_;
  friend struct detail::ExprAccess;
};

/// Expression handle for a registered symbol.
Expr make_symbol(const SymbolTable& table, SymbolId id);

/// Canonical form: expanded rational function over coordinates, parameters
/// and kernel atoms; idempotent.
Expr normalize(const Expr& e);

/// Exact partial derivative with respect to `v` (parameters and other
/// coordinates are constants); normalized.
Expr differentiate(const Expr& e, SymbolId v);

/// Normalized rational power.
Expr pow(const Expr& base, const Rational& exponent);
Expr exp(const Expr& e);
Expr sqrt(const Expr& e);
Expr sin(const Expr& e);
Expr cos(const Expr& e);

/// Walks the given tree as written; throws SingularEvaluation on domain
/// errors and Error when a free symbol is unassigned.
double evaluate(const Expr& e, const std::map<SymbolId, double>& point);

std::set<SymbolId> free_symbols(const Expr& e);

/// Grammar-conformant rendering; parse(to_string(e)) normalizes back to
/// normalize(e).
std::string to_string(const Expr& e);

enum class Confidence : std::uint8_t { exact, numeric };

struct ZeroCheck {
  bool zero;
  Confidence confidence;
};

/// Layered zero test: exact canonical cancellation first, then deterministic
/// seeded probing at admissible points (relative tolerance 1e-9, at least
/// `min_points` valid samples, at most 64 attempts).
ZeroCheck check_zero(const Expr& e, const SymbolTable& symbols, std::uint64_t seed,
                     int min_points = 8, double rel_tol = 1e-9);

bool is_zero(const Expr& e, const SymbolTable& symbols, std::uint64_t seed);

}  // namespace zsym
