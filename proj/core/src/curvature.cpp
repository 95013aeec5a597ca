#include "zsym/curvature.hpp"

#include "zsym/errors.hpp"

namespace zsym {

Connection::Connection(int dim) : dim_(dim) {
  gamma_.assign(static_cast<std::size_t>(dim * dim * dim), Expr());
}

const Expr& Connection::at(int k, int i, int j) const {
  return gamma_[static_cast<std::size_t>((k * dim_ + i) * dim_ + j)];
}

void Connection::set(int k, int i, int j, Expr value) {
  gamma_[static_cast<std::size_t>((k * dim_ + i) * dim_ + j)] = value;
  gamma_[static_cast<std::size_t>((k * dim_ + j) * dim_ + i)] = std::move(value);
}

namespace {

Expr minor_det(const MetricSpec& m, std::vector<int> rows, std::vector<int> cols);

Expr submatrix_det(const MetricSpec& m, const std::vector<int>& rows,
                   const std::vector<int>& cols) {
  const std::size_t n = rows.size();
  if (n == 1) return m.g(rows[0], cols[0]);
  Expr det;
  for (std::size_t j = 0; j < n; ++j) {
    const Expr& a = m.g(rows[0], cols[j]);
    if (a.is_zero_constant()) continue;
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    std::vector<int> sub_cols;
    sub_cols.reserve(n - 1);
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) sub_cols.push_back(cols[k]);
    Expr cof = a * submatrix_det(m, sub_rows, sub_cols);
    det = (j % 2 == 0) ? det + cof : det - cof;
  }
  return det;
}

}  // namespace

Expr metric_determinant(const MetricSpec& m) {
  std::vector<int> all(static_cast<std::size_t>(m.dimension()));
  for (int i = 0; i < m.dimension(); ++i) all[static_cast<std::size_t>(i)] = i;
  return submatrix_det(m, all, all);
}

void require_nondegenerate(const MetricSpec& m) {
  Expr det = metric_determinant(m);
  if (is_zero(det, m.symbols(), m.probe_seed()))
    throw DegenerateMetricError("metric determinant is identically zero");
}

std::vector<Expr> inverse_metric(const MetricSpec& m) {
  const int n = m.dimension();
  Expr det = metric_determinant(m);
  if (is_zero(det, m.symbols(), m.probe_seed()))
    throw DegenerateMetricError("metric determinant is identically zero");
  std::vector<Expr> inv(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<int> rows, cols;
      for (int k = 0; k < n; ++k) {
        if (k != j) rows.push_back(k);
        if (k != i) cols.push_back(k);
      }
      Expr minor = n == 1 ? Expr::integer(1) : submatrix_det(m, rows, cols);
      Expr cof = ((i + j) % 2 == 0) ? minor : -minor;
      inv[static_cast<std::size_t>(i * n + j)] = cof / det;
    }
  }
  return inv;
}

Connection christoffel(const MetricSpec& m) {
  const int n = m.dimension();
  std::vector<Expr> inv = inverse_metric(m);
  // dg[l][i][j] = d_l g_ij
  std::vector<Expr> dg(static_cast<std::size_t>(n * n * n));
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Expr d = differentiate(m.g(i, j), m.chart().coordinate(l));
        dg[static_cast<std::size_t>((l * n + i) * n + j)] = d;
        dg[static_cast<std::size_t>((l * n + j) * n + i)] = d;
      }
  auto dgat = [&](int l, int i, int j) -> const Expr& {
    return dg[static_cast<std::size_t>((l * n + i) * n + j)];
  };
  Connection conn(n);
  const Expr half = Expr::rational(Rational(1, 2));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Expr sum;
        for (int l = 0; l < n; ++l) {
          const Expr& gkl = inv[static_cast<std::size_t>(k * n + l)];
          if (gkl.is_zero_constant()) continue;
          sum = sum + gkl * (dgat(i, j, l) + dgat(j, i, l) - dgat(l, i, j));
        }
        conn.set(k, i, j, half * sum);
      }
  return conn;
}

namespace {

/// d_j Gamma^p_ki for all indices.
std::vector<Expr> connection_jet(const Chart& chart, const Connection& conn) {
  const int n = chart.dimension();
  std::vector<Expr> d(static_cast<std::size_t>(n * n * n * n));
  for (int p = 0; p < n; ++p)
    for (int k = 0; k < n; ++k)
      for (int i = k; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Expr v = differentiate(conn.at(p, k, i), chart.coordinate(j));
          d[static_cast<std::size_t>(((p * n + k) * n + i) * n + j)] = v;
          d[static_cast<std::size_t>(((p * n + i) * n + k) * n + j)] = v;
        }
  return d;
}

}  // namespace

TensorField riemann(const MetricSpec& m) {
  const int n = m.dimension();
  Connection conn = christoffel(m);
  std::vector<Expr> dG = connection_jet(m.chart(), conn);
  auto dGat = [&](int p, int k, int i, int j) -> const Expr& {
    return dG[static_cast<std::size_t>(((p * n + k) * n + i) * n + j)];
  };
  // R^p_ijk, then lower the first index
  std::vector<Expr> rup(static_cast<std::size_t>(n * n * n * n));
  for (int p = 0; p < n; ++p)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k) {
          if (j == k) continue;
          Expr v = dGat(p, k, i, j) - dGat(p, j, i, k);
          for (int l = 0; l < n; ++l) {
            const Expr& a = conn.at(p, j, l);
            const Expr& b = conn.at(l, k, i);
            if (!a.is_zero_constant() && !b.is_zero_constant()) v = v + a * b;
            const Expr& c = conn.at(p, k, l);
            const Expr& d = conn.at(l, j, i);
            if (!c.is_zero_constant() && !d.is_zero_constant()) v = v - c * d;
          }
          rup[static_cast<std::size_t>(((p * n + i) * n + j) * n + k)] = v;
          rup[static_cast<std::size_t>(((p * n + i) * n + k) * n + j)] = -v;
        }
  TensorField R(n, 4, TensorSymmetry::riemann());
  R.for_each_canonical([&](const IndexTuple& idx) {
    const int h = idx[0], i = idx[1], j = idx[2], k = idx[3];
    Expr v;
    for (int p = 0; p < n; ++p) {
      const Expr& ghp = m.g(h, p);
      if (ghp.is_zero_constant()) continue;
      v = v + ghp * rup[static_cast<std::size_t>(((p * n + i) * n + j) * n + k)];
    }
    R.set(idx, std::move(v));
  });
  return R;
}

TensorField ricci(const MetricSpec& m) {
  const int n = m.dimension();
  Connection conn = christoffel(m);
  std::vector<Expr> dG = connection_jet(m.chart(), conn);
  auto dGat = [&](int p, int k, int i, int j) -> const Expr& {
    return dG[static_cast<std::size_t>(((p * n + k) * n + i) * n + j)];
  };
  TensorField S(n, 2, TensorSymmetry::symmetric_pair(0, 1));
  S.for_each_canonical([&](const IndexTuple& idx) {
    const int i = idx[0], j = idx[1];
    // S_ij = -sum_mu R^mu_{i mu j}
    Expr v;
    for (int mu = 0; mu < n; ++mu) {
      Expr term = dGat(mu, j, i, mu) - dGat(mu, mu, i, j);
      for (int l = 0; l < n; ++l) {
        const Expr& a = conn.at(mu, mu, l);
        const Expr& b = conn.at(l, j, i);
        if (!a.is_zero_constant() && !b.is_zero_constant()) term = term + a * b;
        const Expr& c = conn.at(mu, j, l);
        const Expr& d = conn.at(l, mu, i);
        if (!c.is_zero_constant() && !d.is_zero_constant()) term = term - c * d;
      }
      v = v - term;
    }
    S.set(idx, std::move(v));
  });
  return S;
}

Expr scalar_curvature(const MetricSpec& m) {
  const int n = m.dimension();
  std::vector<Expr> inv = inverse_metric(m);
  TensorField S = ricci(m);
  Expr r;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Expr& gij = inv[static_cast<std::size_t>(i * n + j)];
      if (gij.is_zero_constant()) continue;
      Expr s = S.at({i, j});
      if (s.is_zero_constant()) continue;
      r = r + gij * s;
    }
  return r;
}

TensorField covariant_derivative(const TensorField& t, const Chart& chart,
                                 const Connection& conn) {
  const int n = chart.dimension();
  const int k = t.valence();
  TensorSymmetry out_sym = t.symmetry();  // derivative slot is unconstrained
  TensorField out(n, k + 1, out_sym);
  out.for_each_canonical([&](const IndexTuple& oidx) {
    IndexTuple idx(oidx.begin(), oidx.end() - 1);
    const int mth = oidx.back();
    Expr v = differentiate(t.at(idx), chart.coordinate(mth));
    for (int slot = 0; slot < k; ++slot) {
      IndexTuple jdx = idx;
      for (int p = 0; p < n; ++p) {
        const Expr& gamma = conn.at(p, mth, idx[static_cast<std::size_t>(slot)]);
        if (gamma.is_zero_constant()) continue;
        jdx[static_cast<std::size_t>(slot)] = p;
        Expr comp = t.at(jdx);
        if (!comp.is_zero_constant()) v = v - gamma * comp;
      }
      jdx[static_cast<std::size_t>(slot)] = idx[static_cast<std::size_t>(slot)];
    }
    out.set(oidx, std::move(v));
  });
  return out;
}

TensorField covariant_derivative(const TensorField& t, const MetricSpec& m) {
  return covariant_derivative(t, m.chart(), christoffel(m));
}

TensorField z_tensor(const MetricSpec& m) {
  const int n = m.dimension();
  TensorField S = ricci(m);
  Expr phi = m.phi_or_zero();
  TensorField Z(n, 2, TensorSymmetry::symmetric_pair(0, 1));
  Z.for_each_canonical([&](const IndexTuple& idx) {
    Z.set(idx, S.at(idx) + phi * m.g(idx[0], idx[1]));
  });
  return Z;
}

CurvatureData compute_curvature(const MetricSpec& m, bool with_z) {
  require_nondegenerate(m);
  std::vector<Expr> inv = inverse_metric(m);
  Connection conn = christoffel(m);
  TensorField R = riemann(m);
  TensorField dR = covariant_derivative(R, m.chart(), conn);
  TensorField S = ricci(m);
  TensorField dS = covariant_derivative(S, m.chart(), conn);
  Expr r = scalar_curvature(m);
  CurvatureData data{std::move(inv), std::move(conn), std::move(R),     std::move(dR),
                     std::move(S),   std::move(dS),   std::move(r),     std::nullopt,
                     std::nullopt};
  if (with_z) {
    data.z = z_tensor(m);
    data.nabla_z = covariant_derivative(*data.z, m.chart(), data.connection);
  }
  return data;
}

}  // namespace zsym
