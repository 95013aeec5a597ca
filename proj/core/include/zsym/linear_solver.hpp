#pragma once

#include "zsym/expr.hpp"
#include "zsym/symbols.hpp"

#include <cstdint>
#include <vector>

namespace zsym {

/// Dense linear system M x = rhs over the expression field.
struct LinearSystem {
  std::size_t unknowns = 0;
  std::vector<std::vector<Expr>> rows;
  std::vector<Expr> rhs;

  void add_row(std::vector<Expr> coeffs, Expr b);
  /// Drops exact duplicate rows and rows that are identically 0 = 0.
  void dedupe();
};

enum class SolveStatus : std::uint8_t { inconsistent, unique, family, degenerate };

struct AffineSolution {
  SolveStatus status = SolveStatus::inconsistent;
  Confidence confidence = Confidence::exact;
  std::vector<Expr> particular;           // empty when inconsistent
  std::vector<std::vector<Expr>> basis;   // nullspace basis over the field
  int family_dimension() const { return static_cast<int>(basis.size()); }
};

/// Fraction-free (Bareiss) Gaussian elimination with full pivoting. Pivot
/// preference: nonzero rational constants, then fewest kernel atoms, then
/// smallest rendered size. A pivot whose zero test is decided only by the
/// numeric fallback raises UndecidablePivotError.
AffineSolution solve_linear_system(const LinearSystem& sys, const SymbolTable& symbols,
                                   std::uint64_t seed);

}  // namespace zsym
