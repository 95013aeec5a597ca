#include "zsym/linear_solver.hpp"

#include "expr_node.hpp"
#include "zsym/errors.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace zsym {

void LinearSystem::add_row(std::vector<Expr> coeffs, Expr b) {
  if (coeffs.size() != unknowns) throw Error("LinearSystem::add_row: wrong width");
  rows.push_back(std::move(coeffs));
  rhs.push_back(std::move(b));
}

void LinearSystem::dedupe() {
  std::set<std::string> seen;
  std::vector<std::vector<Expr>> kept_rows;
  std::vector<Expr> kept_rhs;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    bool all_zero = rhs[i].is_zero_constant();
    std::string key = to_string(rhs[i]);
    for (const auto& c : rows[i]) {
      key += "|" + to_string(c);
      all_zero = all_zero && c.is_zero_constant();
    }
    if (all_zero) continue;
    if (!seen.insert(key).second) continue;
    kept_rows.push_back(std::move(rows[i]));
    kept_rhs.push_back(std::move(rhs[i]));
  }
  rows = std::move(kept_rows);
  rhs = std::move(kept_rhs);
}

namespace {

/// Number of kernel atoms in the canonical form; proxy for pivot cost.
std::size_t kernel_count(const Expr& e) {
  detail::FracPtr f = detail::ExprAccess::frac(e);
  std::size_t count = 0;
  for (const auto& t : f->num.terms)
    for (const auto& fac : t.mon.factors)
      if (!fac.atom.is_symbol()) ++count;
  count += 8 * f->den.size();
  return count;
}

struct PivotScore {
  int cls;           // 0 = nonzero rational, 1 = anything else
  std::size_t kernels;
  std::size_t size;

  bool operator<(const PivotScore& o) const {
    if (cls != o.cls) return cls < o.cls;
    if (kernels != o.kernels) return kernels < o.kernels;
    return size < o.size;
  }
};

PivotScore score_pivot(const Expr& e) {
  if (e.is_rational_constant()) return PivotScore{0, 0, 0};
  return PivotScore{1, kernel_count(e), to_string(e).size()};
}

}  // namespace

AffineSolution solve_linear_system(const LinearSystem& sys, const SymbolTable& symbols,
                                   std::uint64_t seed) {
  const std::size_t n_cols = sys.unknowns;
  const std::size_t n_rows = sys.rows.size();
  // augmented working matrix
  std::vector<std::vector<Expr>> m(n_rows, std::vector<Expr>(n_cols + 1));
  for (std::size_t i = 0; i < n_rows; ++i) {
    for (std::size_t j = 0; j < n_cols; ++j) m[i][j] = normalize(sys.rows[i][j]);
    m[i][n_cols] = normalize(sys.rhs[i]);
  }
  std::vector<std::size_t> col_of(n_cols);  // position -> original column
  for (std::size_t j = 0; j < n_cols; ++j) col_of[j] = j;

  Confidence confidence = Confidence::exact;
  auto zero_of = [&](const Expr& e) {
    ZeroCheck zc = check_zero(e, symbols, seed);
    if (zc.zero && zc.confidence == Confidence::numeric) confidence = Confidence::numeric;
    return zc;
  };

  Expr prev = Expr::integer(1);
  std::size_t rank = 0;
  const std::size_t max_rank = std::min(n_rows, n_cols);
  while (rank < max_rank) {
    // pivot search over the remaining block
    bool found = false;
    bool saw_numeric_zero = false;
    Expr numeric_zero_entry;
    std::size_t best_r = 0, best_c = 0;
    PivotScore best_score{2, 0, 0};
    for (std::size_t i = rank; i < n_rows; ++i) {
      for (std::size_t j = rank; j < n_cols; ++j) {
        const Expr& e = m[i][j];
        if (e.is_zero_constant()) continue;
        ZeroCheck zc = check_zero(e, symbols, seed);
        if (zc.zero) {
          if (zc.confidence == Confidence::numeric) {
            saw_numeric_zero = true;
            numeric_zero_entry = e;
          }
          continue;
        }
        PivotScore s = score_pivot(e);
        if (!found || s < best_score) {
          found = true;
          best_score = s;
          best_r = i;
          best_c = j;
        }
      }
    }
    if (!found) {
      if (saw_numeric_zero) throw UndecidablePivotError(to_string(numeric_zero_entry));
      break;
    }
    std::swap(m[rank], m[best_r]);
    if (best_c != rank) {
      for (auto& row : m) std::swap(row[rank], row[best_c]);
      std::swap(col_of[rank], col_of[best_c]);
    }
    const Expr pivot = m[rank][rank];
    for (std::size_t i = rank + 1; i < n_rows; ++i) {
      if (m[i][rank].is_zero_constant()) {
        // still scale the row for the fraction-free recurrence
        for (std::size_t j = rank + 1; j <= n_cols; ++j)
          m[i][j] = (m[i][j] * pivot) / prev;
      } else {
        for (std::size_t j = rank + 1; j <= n_cols; ++j)
          m[i][j] = (m[i][j] * pivot - m[i][rank] * m[rank][j]) / prev;
      }
      m[i][rank] = Expr();
    }
    prev = pivot;
    ++rank;
  }

  // consistency of the eliminated tail
  for (std::size_t i = rank; i < n_rows; ++i) {
    ZeroCheck zc = zero_of(m[i][n_cols]);
    if (!zc.zero) return AffineSolution{SolveStatus::inconsistent, confidence, {}, {}};
    if (zc.confidence == Confidence::numeric) confidence = Confidence::numeric;
  }

  // back substitution on the triangular block; free columns parametrize the family
  auto back_solve = [&](const std::vector<Expr>& rhs_free) {
    // rhs_free: contribution of free variables already folded into position rank..;
    // here it is the full right-hand side per pivot row.
    std::vector<Expr> x(n_cols);
    for (std::size_t j = rank; j < n_cols; ++j) x[j] = Expr();
    for (std::size_t i = rank; i-- > 0;) {
      Expr acc = rhs_free[i];
      for (std::size_t j = i + 1; j < rank; ++j) {
        if (!m[i][j].is_zero_constant() && !x[j].is_zero_constant())
          acc = acc - m[i][j] * x[j];
      }
      x[i] = acc / m[i][i];
    }
    return x;
  };

  AffineSolution out;
  out.confidence = confidence;
  // particular solution: free variables zero
  {
    std::vector<Expr> rhs_col(rank);
    for (std::size_t i = 0; i < rank; ++i) rhs_col[i] = m[i][n_cols];
    std::vector<Expr> x = back_solve(rhs_col);
    out.particular.assign(n_cols, Expr());
    for (std::size_t j = 0; j < n_cols; ++j) out.particular[col_of[j]] = x[j];
  }
  // nullspace basis: one vector per free column
  for (std::size_t f = rank; f < n_cols; ++f) {
    std::vector<Expr> rhs_col(rank);
    for (std::size_t i = 0; i < rank; ++i)
      rhs_col[i] = m[i][f].is_zero_constant() ? Expr() : -m[i][f];
    std::vector<Expr> x = back_solve(rhs_col);
    x[f] = Expr::integer(1);
    std::vector<Expr> vec(n_cols);
    for (std::size_t j = 0; j < n_cols; ++j) vec[col_of[j]] = x[j];
    out.basis.push_back(std::move(vec));
  }
  out.status = out.basis.empty() ? SolveStatus::unique : SolveStatus::family;
  return out;
}

}  // namespace zsym
