#pragma once

#include "canonical.hpp"
#include "zsym/expr.hpp"

#include <memory>
#include <vector>

namespace zsym::detail {

struct Node {
  ExprKind kind;
  Rational value;  // rational constant or power exponent
  SymbolId sym = kNoSymbol;
  std::shared_ptr<const std::string> sym_name;
  Assumption::Sign sym_sign = Assumption::Sign::unconstrained;
  CallFn fn = CallFn::exp;
  std::vector<Expr> children;
  FracPtr canon;  // set iff this tree is the canonical rebuild of `canon`
};

struct ExprAccess {
  static Expr make(std::shared_ptr<const Node> n);
  static const std::shared_ptr<const Node>& node(const Expr& e);
  /// Canonical fraction of an expression (cached on normalized trees).
  static FracPtr frac(const Expr& e);
  /// Canonical tree for a fraction.
  static Expr rebuild(FracPtr f);
  static Expr symbol_node(SymbolId id, const std::string& name, Assumption::Sign sign);
};

}  // namespace zsym::detail
