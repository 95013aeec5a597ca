#include "zsym/numeric_check.hpp"

#include "probe.hpp"
#include "zsym/curvature.hpp"
#include "zsym/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <random>

namespace zsym {

namespace {

using Vec = std::vector<double>;

std::map<SymbolId, double> to_map(const detail::EvalPoint& p) {
  std::map<SymbolId, double> out;
  for (SymbolId id = 0; id < p.values.size(); ++id)
    if (!std::isnan(p.values[id])) out[id] = p.values[id];
  return out;
}

/// Fourth-order central difference along coordinate axes, nested for mixed
/// and higher derivatives. `axes` lists coordinate positions (0-based).
double central_derivative(const std::function<double(const Vec&)>& f, Vec x,
                          const std::vector<int>& axes, const Vec& steps, std::size_t level = 0) {
  if (level == axes.size()) return f(x);
  const int axis = axes[level];
  const double h = steps[static_cast<std::size_t>(axis)];
  auto shifted = [&](double offset) {
    Vec y = x;
    y[static_cast<std::size_t>(axis)] += offset;
    return central_derivative(f, std::move(y), axes, steps, level + 1);
  };
  return (shifted(-2 * h) - 8 * shifted(-h) + 8 * shifted(h) - shifted(2 * h)) / (12 * h);
}

struct Jets {
  int n;
  // g and derivatives of g up to third order, all raw partials
  std::vector<double> g, dg, d2g, d3g;
  double& at1(int a, int i, int j) { return dg[static_cast<std::size_t>((a * n + i) * n + j)]; }
  double& at2(int a, int b, int i, int j) {
    return d2g[static_cast<std::size_t>(((a * n + b) * n + i) * n + j)];
  }
  double& at3(int a, int b, int c, int i, int j) {
    return d3g[static_cast<std::size_t>((((a * n + b) * n + c) * n + i) * n + j)];
  }
};

}  // namespace

NumericValidation validate_against_finite_differences(const MetricSpec& m, std::uint64_t seed,
                                                      int points, double tol) {
  const int n = m.dimension();
  NumericValidation report;
  report.seed = seed;
  report.points = points;
  report.tolerance = tol;

  // symbolic targets
  Connection conn_sym = christoffel(m);
  TensorField R_sym = riemann(m);
  TensorField dR_sym = covariant_derivative(R_sym, m.chart(), conn_sym);
  TensorField S_sym = ricci(m);
  TensorField dS_sym = covariant_derivative(S_sym, m.chart(), conn_sym);

  std::mt19937_64 rng(seed);
  int sampled = 0;
  int attempts = 0;
  while (sampled < points && attempts < 64 + 8 * points) {
    ++attempts;
    detail::EvalPoint ep = detail::draw_point(m.symbols(), rng);
    auto pt_map = to_map(ep);
    Vec x(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c)
      x[static_cast<std::size_t>(c)] = pt_map.at(m.chart().coordinate(c));
    Vec steps(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c)
      steps[static_cast<std::size_t>(c)] = 1e-3 * std::abs(x[static_cast<std::size_t>(c)]);

    auto g_fn = [&](int i, int j) {
      return [&, i, j](const Vec& y) {
        std::map<SymbolId, double> q = pt_map;
        for (int c = 0; c < n; ++c) q[m.chart().coordinate(c)] = y[static_cast<std::size_t>(c)];
        return evaluate(m.g(i, j), q);
      };
    };

    Jets jet;
    jet.n = n;
    jet.g.assign(static_cast<std::size_t>(n * n), 0);
    jet.dg.assign(static_cast<std::size_t>(n * n * n), 0);
    jet.d2g.assign(static_cast<std::size_t>(n * n * n * n), 0);
    jet.d3g.assign(static_cast<std::size_t>(n * n * n * n * n), 0);
    bool ok = true;
    try {
      for (int i = 0; i < n && ok; ++i)
        for (int j = i; j < n; ++j) {
          auto f = g_fn(i, j);
          double v = f(x);
          jet.g[static_cast<std::size_t>(i * n + j)] = v;
          jet.g[static_cast<std::size_t>(j * n + i)] = v;
          for (int a = 0; a < n; ++a) {
            double d1 = central_derivative(f, x, {a}, steps);
            jet.at1(a, i, j) = d1;
            jet.at1(a, j, i) = d1;
            for (int b = a; b < n; ++b) {
              double d2 = central_derivative(f, x, {a, b}, steps);
              jet.at2(a, b, i, j) = jet.at2(b, a, i, j) = d2;
              jet.at2(a, b, j, i) = jet.at2(b, a, j, i) = d2;
              for (int c = b; c < n; ++c) {
                double d3 = central_derivative(f, x, {a, b, c}, steps);
                for (auto [p1, p2, p3] : {std::array<int, 3>{a, b, c}, {a, c, b}, {b, a, c},
                                          {b, c, a}, {c, a, b}, {c, b, a}}) {
                  jet.at3(p1, p2, p3, i, j) = d3;
                  jet.at3(p1, p2, p3, j, i) = d3;
                }
              }
            }
          }
        }
    } catch (const SingularEvaluation&) {
      ok = false;
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) continue;

    // algebraic pipeline on the jets
    Eigen::MatrixXd G(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) G(i, j) = jet.g[static_cast<std::size_t>(i * n + j)];
    if (std::abs(G.determinant()) < 1e-12) continue;
    Eigen::MatrixXd Ginv = G.inverse();

    auto idx3 = [n](int a, int i, int j) { return static_cast<std::size_t>((a * n + i) * n + j); };
    auto idx4 = [n](int a, int b, int i, int j) {
      return static_cast<std::size_t>(((a * n + b) * n + i) * n + j);
    };

    // dginv_a = -Ginv dg_a Ginv ; d2ginv_ab = -Ginv d2g_ab Ginv
    //           + Ginv dg_a Ginv dg_b Ginv + Ginv dg_b Ginv dg_a Ginv
    std::vector<Eigen::MatrixXd> dg_m(static_cast<std::size_t>(n)),
        dginv(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
      Eigen::MatrixXd D(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) D(i, j) = jet.at1(a, i, j);
      dg_m[static_cast<std::size_t>(a)] = D;
      dginv[static_cast<std::size_t>(a)] = -Ginv * D * Ginv;
    }
    std::vector<Eigen::MatrixXd> d2ginv(static_cast<std::size_t>(n * n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Eigen::MatrixXd D2(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) D2(i, j) = jet.at2(a, b, i, j);
        d2ginv[static_cast<std::size_t>(a * n + b)] =
            -Ginv * D2 * Ginv + Ginv * dg_m[static_cast<std::size_t>(a)] * Ginv *
                                    dg_m[static_cast<std::size_t>(b)] * Ginv +
            Ginv * dg_m[static_cast<std::size_t>(b)] * Ginv * dg_m[static_cast<std::size_t>(a)] *
                Ginv;
      }

    // C_lij = (d_i g_jl + d_j g_il - d_l g_ij)/2 and its two derivative jets
    std::vector<double> C(static_cast<std::size_t>(n * n * n)),
        dC(static_cast<std::size_t>(n * n * n * n)),
        d2C(static_cast<std::size_t>(n * n * n * n * n));
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          C[idx3(l, i, j)] = 0.5 * (jet.at1(i, j, l) + jet.at1(j, i, l) - jet.at1(l, i, j));
          for (int a = 0; a < n; ++a) {
            dC[idx4(a, l, i, j)] =
                0.5 * (jet.at2(a, i, j, l) + jet.at2(a, j, i, l) - jet.at2(a, l, i, j));
            for (int b = 0; b < n; ++b)
              d2C[static_cast<std::size_t>((((a * n + b) * n + l) * n + i) * n + j)] =
                  0.5 * (jet.at3(a, b, i, j, l) + jet.at3(a, b, j, i, l) - jet.at3(a, b, l, i, j));
          }
        }

    // Gamma and its derivative jets
    std::vector<double> Gam(static_cast<std::size_t>(n * n * n)),
        dGam(static_cast<std::size_t>(n * n * n * n)),
        d2Gam(static_cast<std::size_t>(n * n * n * n * n));
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double v = 0;
          for (int l = 0; l < n; ++l) v += Ginv(k, l) * C[idx3(l, i, j)];
          Gam[idx3(k, i, j)] = v;
          for (int a = 0; a < n; ++a) {
            double dv = 0;
            for (int l = 0; l < n; ++l)
              dv += dginv[static_cast<std::size_t>(a)](k, l) * C[idx3(l, i, j)] +
                    Ginv(k, l) * dC[idx4(a, l, i, j)];
            dGam[idx4(a, k, i, j)] = dv;
            for (int b = 0; b < n; ++b) {
              double d2v = 0;
              for (int l = 0; l < n; ++l)
                d2v += d2ginv[static_cast<std::size_t>(a * n + b)](k, l) * C[idx3(l, i, j)] +
                       dginv[static_cast<std::size_t>(a)](k, l) * dC[idx4(b, l, i, j)] +
                       dginv[static_cast<std::size_t>(b)](k, l) * dC[idx4(a, l, i, j)] +
                       Ginv(k, l) *
                           d2C[static_cast<std::size_t>((((a * n + b) * n + l) * n + i) * n + j)];
              d2Gam[static_cast<std::size_t>((((a * n + b) * n + k) * n + i) * n + j)] = d2v;
            }
          }
        }

    // R^p_ijk and d_a R^p_ijk
    auto rup = [&](int p, int i, int j, int k) {
      double v = dGam[idx4(j, p, k, i)] - dGam[idx4(k, p, j, i)];
      for (int l = 0; l < n; ++l)
        v += Gam[idx3(p, j, l)] * Gam[idx3(l, k, i)] - Gam[idx3(p, k, l)] * Gam[idx3(l, j, i)];
      return v;
    };
    auto drup = [&](int a, int p, int i, int j, int k) {
      double v = d2Gam[static_cast<std::size_t>((((a * n + j) * n + p) * n + k) * n + i)] -
                 d2Gam[static_cast<std::size_t>((((a * n + k) * n + p) * n + j) * n + i)];
      for (int l = 0; l < n; ++l)
        v += dGam[idx4(a, p, j, l)] * Gam[idx3(l, k, i)] +
             Gam[idx3(p, j, l)] * dGam[idx4(a, l, k, i)] -
             dGam[idx4(a, p, k, l)] * Gam[idx3(l, j, i)] -
             Gam[idx3(p, k, l)] * dGam[idx4(a, l, j, i)];
      return v;
    };
    auto r_down = [&](int h, int i, int j, int k) {
      double v = 0;
      for (int p = 0; p < n; ++p) v += G(h, p) * rup(p, i, j, k);
      return v;
    };
    auto dr_down = [&](int a, int h, int i, int j, int k) {
      double v = 0;
      for (int p = 0; p < n; ++p)
        v += jet.at1(a, h, p) * rup(p, i, j, k) + G(h, p) * drup(a, p, i, j, k);
      return v;
    };
    auto s_at = [&](int i, int j) {
      double v = 0;
      for (int mu = 0; mu < n; ++mu) v -= rup(mu, i, mu, j);
      return v;
    };
    auto ds_at = [&](int a, int i, int j) {
      double v = 0;
      for (int mu = 0; mu < n; ++mu) v -= drup(a, mu, i, mu, j);
      return v;
    };
    // covariant derivatives
    auto nabla_r = [&](int h, int i, int j, int k, int a) {
      double v = dr_down(a, h, i, j, k);
      const int idxs[4] = {h, i, j, k};
      for (int slot = 0; slot < 4; ++slot)
        for (int p = 0; p < n; ++p) {
          int jdx[4] = {idxs[0], idxs[1], idxs[2], idxs[3]};
          jdx[slot] = p;
          v -= Gam[idx3(p, a, idxs[slot])] * r_down(jdx[0], jdx[1], jdx[2], jdx[3]);
        }
      return v;
    };
    auto nabla_s = [&](int i, int j, int a) {
      double v = ds_at(a, i, j);
      for (int p = 0; p < n; ++p)
        v -= Gam[idx3(p, a, i)] * s_at(p, j) + Gam[idx3(p, a, j)] * s_at(i, p);
      return v;
    };

    auto record = [&](const std::string& tensor, IndexTuple idx, double sym, double fd) {
      double rel = std::abs(sym - fd) / std::max({1.0, std::abs(sym), std::abs(fd)});
      report.max_rel_error = std::max(report.max_rel_error, rel);
      if (rel > tol)
        report.failures.push_back(NumericValidation::Failure{tensor, idx, sym, fd, rel});
    };

    try {
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = i; j < n; ++j)
            record("Gamma", {k, i, j}, evaluate(conn_sym.at(k, i, j), pt_map),
                   Gam[idx3(k, i, j)]);
      R_sym.for_each_canonical([&](const IndexTuple& idx) {
        record("R", idx, evaluate(R_sym.at(idx), pt_map),
               r_down(idx[0], idx[1], idx[2], idx[3]));
      });
      dR_sym.for_each_canonical([&](const IndexTuple& idx) {
        record("DR", idx, evaluate(dR_sym.at(idx), pt_map),
               nabla_r(idx[0], idx[1], idx[2], idx[3], idx[4]));
      });
      S_sym.for_each_canonical([&](const IndexTuple& idx) {
        record("S", idx, evaluate(S_sym.at(idx), pt_map), s_at(idx[0], idx[1]));
      });
      dS_sym.for_each_canonical([&](const IndexTuple& idx) {
        record("DS", idx, evaluate(dS_sym.at(idx), pt_map),
               nabla_s(idx[0], idx[1], idx[2]));
      });
    } catch (const SingularEvaluation&) {
      continue;
    } catch (const Error&) {
      continue;
    }
    ++sampled;
  }
  if (sampled < points)
    throw Error("finite-difference validation: not enough admissible sample points");
  report.passed = report.failures.empty();
  return report;
}

NumericSystemCheck least_squares_system_check(const LinearSystem& sys,
                                              const AffineSolution* family,
                                              const SymbolTable& symbols, std::uint64_t seed,
                                              int points) {
  NumericSystemCheck out;
  std::mt19937_64 rng(seed);
  int sampled = 0;
  for (int attempt = 0; attempt < 64 && sampled < points; ++attempt) {
    detail::EvalPoint ep = detail::draw_point(symbols, rng);
    auto pt = to_map(ep);
    const int rows = static_cast<int>(sys.rows.size());
    const int cols = static_cast<int>(sys.unknowns);
    Eigen::MatrixXd A(rows, cols);
    Eigen::VectorXd b(rows);
    try {
      for (int i = 0; i < rows; ++i) {
        b(i) = evaluate(sys.rhs[static_cast<std::size_t>(i)], pt);
        for (int j = 0; j < cols; ++j)
          A(i, j) = evaluate(sys.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], pt);
      }
    } catch (const SingularEvaluation&) {
      continue;
    } catch (const Error&) {
      continue;
    }
    Eigen::VectorXd x = A.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
    out.max_residual = std::max(out.max_residual, (A * x - b).norm());
    if (family && family->status != SolveStatus::inconsistent) {
      // distance of x from the evaluated affine family
      Eigen::VectorXd part(cols);
      try {
        for (int j = 0; j < cols; ++j)
          part(j) = evaluate(family->particular[static_cast<std::size_t>(j)], pt);
        const int dim = family->family_dimension();
        Eigen::MatrixXd B(cols, std::max(dim, 1));
        B.setZero();
        for (int d = 0; d < dim; ++d)
          for (int j = 0; j < cols; ++j)
            B(j, d) = evaluate(family->basis[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)], pt);
        Eigen::VectorXd delta = x - part;
        if (dim > 0) {
          Eigen::VectorXd c = B.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(delta);
          delta -= B * c;
        }
        out.max_family_distance = std::max(out.max_family_distance, delta.norm());
      } catch (const SingularEvaluation&) {
        continue;
      } catch (const Error&) {
        continue;
      }
    }
    ++sampled;
  }
  out.points = sampled;
  if (sampled < points)
    throw Error("least-squares system check: not enough admissible sample points");
  return out;
}

}  // namespace zsym
