#include "probe.hpp"
#include "zsym/errors.hpp"
#include "zsym/structures.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>

namespace zsym {

namespace {

std::map<SymbolId, double> to_map(const detail::EvalPoint& p) {
  std::map<SymbolId, double> out;
  for (SymbolId id = 0; id < p.values.size(); ++id)
    if (!std::isnan(p.values[id])) out[id] = p.values[id];
  return out;
}

/// Clustered multiplicities of the (possibly complex) eigenvalues, largest
/// first. Relative clustering tolerance `tol`.
std::vector<int> cluster_multiplicities(const Eigen::VectorXcd& ev, double tol) {
  std::vector<std::complex<double>> vals(ev.data(), ev.data() + ev.size());
  double scale = 0;
  for (auto& v : vals) scale = std::max(scale, std::abs(v));
  scale = std::max(scale, 1e-30);
  std::vector<bool> used(vals.size(), false);
  std::vector<int> mult;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (used[i]) continue;
    int count = 1;
    used[i] = true;
    for (std::size_t j = i + 1; j < vals.size(); ++j) {
      if (!used[j] && std::abs(vals[i] - vals[j]) <= tol * scale) {
        used[j] = true;
        ++count;
      }
    }
    mult.push_back(count);
  }
  std::sort(mult.rbegin(), mult.rend());
  return mult;
}

}  // namespace

RankOneReport rank_one_ricci_decomposition(const MetricSpec& m) {
  const int n = m.dimension();
  RankOneReport report;
  require_nondegenerate(m);
  TensorField S = ricci(m);
  std::vector<Expr> ginv = inverse_metric(m);
  Expr r = scalar_curvature(m);

  auto zc = [&](const Expr& e) { return check_zero(e, m.symbols(), m.probe_seed()); };
  auto note_conf = [&](const ZeroCheck& z) {
    if (z.confidence == Confidence::numeric) report.confidence = Confidence::numeric;
  };

  // Einstein first: S - (r/n) g identically zero.
  {
    bool einstein = true;
    Expr a = r / Expr::integer(n);
    for (int i = 0; i < n && einstein; ++i)
      for (int j = i; j < n && einstein; ++j) {
        ZeroCheck z = zc(S.at({i, j}) - a * m.g(i, j));
        note_conf(z);
        if (!z.zero) einstein = false;
      }
    if (einstein) {
      report.verdict = RankOneVerdict::einstein;
      report.scale = normalize(a);
      return report;
    }
  }

  // Numeric eigenstructure of g^{-1} S at sample points.
  std::mt19937_64 rng(m.probe_seed() + 17);
  const double tol = 1e-6;
  int sampled = 0;
  bool always_big_cluster = true;
  for (int attempt = 0; attempt < 64 && sampled < 5; ++attempt) {
    detail::EvalPoint p = detail::draw_point(m.symbols(), rng);
    auto pt = to_map(p);
    Eigen::MatrixXd G(n, n), Sm(n, n);
    try {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          G(i, j) = evaluate(m.g(i, j), pt);
          Sm(i, j) = evaluate(S.at({i, j}), pt);
        }
    } catch (const SingularEvaluation&) {
      continue;
    }
    Eigen::MatrixXd N = G.partialPivLu().solve(Sm);
    Eigen::EigenSolver<Eigen::MatrixXd> es(N, /*computeEigenvectors=*/false);
    std::vector<int> mult = cluster_multiplicities(es.eigenvalues(), tol);
    if (sampled == 0) report.eigen_multiplicities = mult;
    if (mult.empty() || mult.front() < n - 1) always_big_cluster = false;
    ++sampled;
  }
  if (sampled < 5) {
    report.verdict = RankOneVerdict::indeterminate;
    report.note = "could not draw enough admissible sample points";
    return report;
  }

  // Any a with rank(S - a g) <= 1 satisfies tr(N-aI)^2 = tr((N-aI)^2), i.e.
  //   n(n-1) a^2 - 2(n-1) T1 a + (T1^2 - T2) = 0,
  // with T1 = tr(g^{-1}S) = r and T2 = tr((g^{-1}S)^2). The roots are the
  // only candidates; refuting both refutes every possible decomposition.
  Expr t2;
  {
    // N^i_j = g^{ik} S_kj
    std::vector<Expr> N(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Expr v;
        for (int k = 0; k < n; ++k) {
          const Expr& gik = ginv[static_cast<std::size_t>(i * n + k)];
          if (gik.is_zero_constant()) continue;
          v = v + gik * S.at({k, j});
        }
        N[static_cast<std::size_t>(i * n + j)] = v;
      }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        t2 = t2 + N[static_cast<std::size_t>(i * n + j)] * N[static_cast<std::size_t>(j * n + i)];
  }
  Expr disc = (Expr::integer(n) * t2 - r * r) / Expr::integer(n - 1);

  std::vector<Expr> candidates;
  ZeroCheck disc_zero = zc(disc);
  note_conf(disc_zero);
  if (disc_zero.zero) {
    candidates.push_back(r / Expr::integer(n));
  } else {
    // discriminant must be nonnegative somewhere admissible for real roots
    bool maybe_nonneg = false;
    std::mt19937_64 rng2(m.probe_seed() + 29);
    for (int attempt = 0; attempt < 32; ++attempt) {
      detail::EvalPoint p = detail::draw_point(m.symbols(), rng2);
      try {
        double v = evaluate(disc, to_map(p));
        if (v > -1e-12) {
          maybe_nonneg = true;
          break;
        }
      } catch (const SingularEvaluation&) {
        continue;
      } catch (const Error&) {
        continue;
      }
    }
    if (maybe_nonneg) {
      Expr root = sqrt(disc);
      candidates.push_back((r + root) / Expr::integer(n));
      candidates.push_back((r - root) / Expr::integer(n));
    }
  }

  for (const Expr& a : candidates) {
    // all 2x2 minors of M = S - a g must vanish
    std::vector<Expr> M(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        M[static_cast<std::size_t>(i * n + j)] = S.at({i, j}) - a * m.g(i, j);
    auto at = [&](int i, int j) -> const Expr& {
      return M[static_cast<std::size_t>(i * n + j)];
    };
    bool rank_le_1 = true;
    for (int i = 0; i < n && rank_le_1; ++i)
      for (int j = i + 1; j < n && rank_le_1; ++j)
        for (int k = 0; k < n && rank_le_1; ++k)
          for (int l = k + 1; l < n && rank_le_1; ++l) {
            ZeroCheck z = zc(at(i, k) * at(j, l) - at(i, l) * at(j, k));
            note_conf(z);
            if (!z.zero) rank_le_1 = false;
          }
    if (!rank_le_1) continue;

    report.scale = normalize(a);
    report.trace_factor = normalize(r - Expr::integer(n) * a);
    // generator from a nonzero row of M
    int pivot = -1;
    for (int i = 0; i < n && pivot < 0; ++i) {
      ZeroCheck z = zc(at(i, i));
      if (!z.zero) pivot = i;
    }
    for (int i = 0; i < n && pivot < 0; ++i)
      for (int j = 0; j < n && pivot < 0; ++j)
        if (!zc(at(i, j)).zero) pivot = i;
    if (pivot < 0) {
      // S - a g vanished entirely; that is the Einstein case, caught above
      report.verdict = RankOneVerdict::einstein;
      return report;
    }
    OneForm eta = OneForm::zeros(n);
    for (int i = 0; i < n; ++i) eta.components[static_cast<std::size_t>(i)] = at(pivot, i);
    report.generator = eta;
    // causal character of eta via q = g^{ij} eta_i eta_j
    Expr q;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Expr& gij = ginv[static_cast<std::size_t>(i * n + j)];
        if (gij.is_zero_constant()) continue;
        q = q + gij * eta.components[static_cast<std::size_t>(i)] *
                    eta.components[static_cast<std::size_t>(j)];
      }
    ZeroCheck qz = zc(q);
    note_conf(qz);
    if (qz.zero) {
      report.verdict = RankOneVerdict::rank_one_null;
      report.causal_character = "null";
      return report;
    }
    // sign of q at admissible samples
    std::mt19937_64 rng3(m.probe_seed() + 43);
    int pos = 0, neg = 0, seen = 0;
    for (int attempt = 0; attempt < 32 && seen < 5; ++attempt) {
      detail::EvalPoint p = detail::draw_point(m.symbols(), rng3);
      try {
        double v = evaluate(q, to_map(p));
        if (v > 0) ++pos;
        else if (v < 0) ++neg;
        ++seen;
      } catch (const SingularEvaluation&) {
        continue;
      } catch (const Error&) {
        continue;
      }
    }
    if (pos > 0 && neg > 0) {
      report.verdict = RankOneVerdict::indeterminate;
      report.note = "generator changes causal character across the domain";
      return report;
    }
    report.causal_character = pos > 0 ? "spacelike" : "timelike";
    ZeroCheck bz = zc(*report.trace_factor);
    note_conf(bz);
    if (bz.zero) {
      // rank-one part has zero trace against g yet eta is non-null: impossible
      // for a symmetric rank-1 tensor, so treat as indeterminate
      report.verdict = RankOneVerdict::indeterminate;
      report.note = "vanishing trace factor with non-null generator";
      return report;
    }
    report.verdict = RankOneVerdict::quasi_einstein;
    report.confidence = report.confidence;  // already aggregated
    return report;
  }

  report.verdict = RankOneVerdict::none;
  if (always_big_cluster)
    report.note = "eigenvalue clustering suggested a large multiplicity, refuted symbolically";
  return report;
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

StructureReport classify(const MetricSpec& m) {
  StructureReport report;
  require_nondegenerate(m);
  const bool has_phi = m.phi().has_value();
  TensorField S = ricci(m);
  std::optional<TensorField> Z;
  if (has_phi) Z = z_tensor(m);
  TensorField R = riemann(m);

  auto run = [&](StructureId id, const std::string& tensor, auto&& solver) {
    ConditionResult res;
    res.id = id;
    res.tensor = tensor;
    try {
      res.solution = solver();
    } catch (const UndecidablePivotError& e) {
      res.error = e.what();
    } catch (const Error& e) {
      res.error = e.what();
    }
    report.conditions.push_back(std::move(res));
  };

  if (has_phi) {
    run(StructureId::wczs, "Z", [&] { return solve_wc_general(m, *Z); });
    run(StructureId::wzs, "Z", [&] { return solve_weak(m, *Z); });
  } else {
    ConditionResult skip;
    skip.id = StructureId::wczs;
    skip.tensor = "Z";
    skip.applicable = false;
    skip.note = "no phi given; Z reduces to the Ricci tensor (see wcrs/wrs)";
    report.conditions.push_back(skip);
    skip.id = StructureId::wzs;
    report.conditions.push_back(skip);
  }
  run(StructureId::wcrs, "S", [&] { return solve_wc_general(m, S); });
  run(StructureId::wrs, "S", [&] { return solve_weak(m, S); });
  run(StructureId::recurrent, "R", [&] { return check_recurrent(m, R); });
  run(StructureId::ricci_recurrent, "S", [&] { return check_recurrent(m, S); });

  report.gray = gray_class_checks(m);
  {
    ConditionResult res;
    res.id = StructureId::gray_a;
    res.tensor = "S";
    res.holds = report.gray.class_a;
    report.conditions.push_back(res);
    res.id = StructureId::codazzi;
    res.holds = report.gray.class_b;
    report.conditions.push_back(res);
  }
  report.rank_one = rank_one_ricci_decomposition(m);
  {
    ConditionResult res;
    res.id = StructureId::quasi_einstein;
    res.tensor = "S";
    res.holds = report.rank_one.verdict == RankOneVerdict::quasi_einstein ||
                report.rank_one.verdict == RankOneVerdict::einstein;
    res.note = to_string(report.rank_one.verdict);
    report.conditions.push_back(res);
  }

  auto status_of = [&](StructureId id, const std::string& tensor)
      -> std::optional<SolveStatus> {
    const ConditionResult* c = report.find(id, tensor);
    if (!c || !c->solution) return std::nullopt;
    return c->solution->status;
  };

  auto properness = [&](std::optional<SolveStatus> cyc, std::optional<SolveStatus> weak)
      -> std::optional<bool> {
    if (!cyc || !weak) return std::nullopt;
    if (*cyc == SolveStatus::degenerate || *weak == SolveStatus::degenerate)
      return std::nullopt;
    bool cyc_ok = *cyc == SolveStatus::unique || *cyc == SolveStatus::family;
    bool weak_ok = *weak == SolveStatus::unique || *weak == SolveStatus::family;
    if (!cyc_ok) return std::nullopt;  // not even weakly cyclic symmetric
    return !weak_ok;
  };

  report.proper_wczs = properness(status_of(StructureId::wczs, "Z"),
                                  status_of(StructureId::wzs, "Z"));
  report.proper_wcrs = properness(status_of(StructureId::wcrs, "S"),
                                  status_of(StructureId::wrs, "S"));

  // Uniqueness analysis on the primary cyclic solution (Z when phi given).
  const ConditionResult* primary = has_phi ? report.find(StructureId::wczs, "Z")
                                           : report.find(StructureId::wcrs, "S");
  if (primary && primary->solution && primary->solution->solvable() &&
      primary->solution->status != SolveStatus::degenerate) {
    const SolutionSpace& sol = *primary->solution;
    const int n = m.dimension();
    auto forms_equal = [&](const std::map<std::string, OneForm>& forms) {
      for (int i = 0; i < n; ++i) {
        Expr ab = forms.at("A").components[static_cast<std::size_t>(i)] -
                  forms.at("B").components[static_cast<std::size_t>(i)];
        Expr bd = forms.at("B").components[static_cast<std::size_t>(i)] -
                  forms.at("D").components[static_cast<std::size_t>(i)];
        if (!check_zero(ab, m.symbols(), m.probe_seed()).zero) return false;
        if (!check_zero(bd, m.symbols(), m.probe_seed()).zero) return false;
      }
      return true;
    };
    bool forced = forms_equal(sol.particular);
    for (const auto& vec : sol.basis)
      if (forced) forced = forced && forms_equal(vec);
    report.forces_equal_forms = forced;
    OneForm F = OneForm::zeros(n);
    bool f_zero = true;
    for (int i = 0; i < n; ++i) {
      F.components[static_cast<std::size_t>(i)] =
          normalize(sol.particular.at("B").components[static_cast<std::size_t>(i)] -
                    sol.particular.at("D").components[static_cast<std::size_t>(i)]);
      if (f_zero)
        f_zero = check_zero(F.components[static_cast<std::size_t>(i)], m.symbols(),
                            m.probe_seed())
                     .zero;
    }
    report.f_form = std::move(F);
    report.f_is_zero = f_zero;
  }
  return report;
}

}  // namespace zsym
