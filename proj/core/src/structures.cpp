#include "zsym/structures.hpp"

#include "zsym/errors.hpp"

#include <algorithm>

namespace zsym {

namespace {

TensorField nabla(const TensorField& t, const MetricSpec& m) {
  return covariant_derivative(t, m.chart(), christoffel(m));
}

bool tensor_is_zero(const TensorField& t, const MetricSpec& m, Confidence& conf) {
  for (const auto& [idx, e] : t.stored()) {
    ZeroCheck zc = check_zero(e, m.symbols(), m.probe_seed());
    if (!zc.zero) return false;
    if (zc.confidence == Confidence::numeric) conf = Confidence::numeric;
  }
  return true;
}

}  // namespace

TensorField cyclic_covariant_sum(const TensorField& t, const MetricSpec& m) {
  if (t.valence() != 2) throw Error("cyclic_covariant_sum: expected a (0,2) tensor");
  TensorField dt = nabla(t, m);
  const int n = m.dimension();
  TensorField out(n, 3, TensorSymmetry::fully_symmetric());
  out.for_each_canonical([&](const IndexTuple& idx) {
    const int k = idx[0], i = idx[1], j = idx[2];
    out.set(idx, dt.at({i, j, k}) + dt.at({k, j, i}) + dt.at({i, k, j}));
  });
  return out;
}

TensorField wc_residual(const MetricSpec& m, const TensorField& t, const OneForm& A,
                        const OneForm& B, const OneForm& D) {
  if (t.valence() != 2) throw Error("wc_residual: expected a (0,2) tensor");
  const int n = m.dimension();
  TensorField dt = nabla(t, m);
  TensorField out(n, 3, TensorSymmetry::none());
  out.for_each_canonical([&](const IndexTuple& idx) {
    const int k = idx[0], i = idx[1], j = idx[2];
    Expr lhs = dt.at({i, j, k}) + dt.at({k, j, i}) + dt.at({i, k, j});
    Expr rhs = A.components[static_cast<std::size_t>(k)] * t.at({i, j}) +
               B.components[static_cast<std::size_t>(i)] * t.at({k, j}) +
               D.components[static_cast<std::size_t>(j)] * t.at({i, k});
    out.set(idx, lhs - rhs);
  });
  return out;
}

TensorField weak_residual(const MetricSpec& m, const TensorField& t, const OneForm& A,
                          const OneForm& B, const OneForm& D) {
  if (t.valence() != 2) throw Error("weak_residual: expected a (0,2) tensor");
  const int n = m.dimension();
  TensorField dt = nabla(t, m);
  TensorField out(n, 3, TensorSymmetry::none());
  out.for_each_canonical([&](const IndexTuple& idx) {
    const int k = idx[0], i = idx[1], j = idx[2];
    Expr rhs = A.components[static_cast<std::size_t>(k)] * t.at({i, j}) +
               B.components[static_cast<std::size_t>(i)] * t.at({k, j}) +
               D.components[static_cast<std::size_t>(j)] * t.at({i, k});
    out.set(idx, dt.at({i, j, k}) - rhs);
  });
  return out;
}

TensorField recurrence_residual(const MetricSpec& m, const TensorField& t, const OneForm& pi) {
  const int n = m.dimension();
  TensorField dt = nabla(t, m);
  TensorField out(n, t.valence() + 1, TensorSymmetry::none());
  out.for_each_canonical([&](const IndexTuple& oidx) {
    IndexTuple idx(oidx.begin(), oidx.end() - 1);
    const int k = oidx.back();
    out.set(oidx, dt.at(oidx) - pi.components[static_cast<std::size_t>(k)] * t.at(idx));
  });
  return out;
}

// ---------------------------------------------------------------------------
// system assembly
// ---------------------------------------------------------------------------

LinearSystem build_cyclic_system(const MetricSpec& m, const TensorField& t, int blocks) {
  const int n = m.dimension();
  TensorField dt = nabla(t, m);
  LinearSystem sys;
  sys.unknowns = static_cast<std::size_t>(blocks * n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::vector<Expr> row(sys.unknowns);
        auto add = [&](int block, int comp, const Expr& v) {
          if (v.is_zero_constant()) return;
          std::size_t col = static_cast<std::size_t>((blocks == 1 ? 0 : block) * n + comp);
          row[col] = row[col] + v;
        };
        add(0, k, t.at({i, j}));
        add(1, i, t.at({k, j}));
        add(2, j, t.at({i, k}));
        Expr lhs = dt.at({i, j, k}) + dt.at({k, j, i}) + dt.at({i, k, j});
        sys.add_row(std::move(row), std::move(lhs));
      }
  sys.dedupe();
  return sys;
}

LinearSystem build_weak_system(const MetricSpec& m, const TensorField& t) {
  const int n = m.dimension();
  TensorField dt = nabla(t, m);
  LinearSystem sys;
  sys.unknowns = static_cast<std::size_t>(3 * n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::vector<Expr> row(sys.unknowns);
        auto add = [&](int block, int comp, const Expr& v) {
          if (v.is_zero_constant()) return;
          std::size_t col = static_cast<std::size_t>(block * n + comp);
          row[col] = row[col] + v;
        };
        add(0, k, t.at({i, j}));
        add(1, i, t.at({k, j}));
        add(2, j, t.at({i, k}));
        sys.add_row(std::move(row), dt.at({i, j, k}));
      }
  sys.dedupe();
  return sys;
}

LinearSystem build_recurrence_system(const MetricSpec& m, const TensorField& t) {
  const int n = m.dimension();
  TensorField dt = nabla(t, m);
  LinearSystem sys;
  sys.unknowns = static_cast<std::size_t>(n);
  t.for_each_canonical([&](const IndexTuple& idx) {
    Expr comp = t.at(idx);
    for (int k = 0; k < n; ++k) {
      std::vector<Expr> row(sys.unknowns);
      row[static_cast<std::size_t>(k)] = comp;
      IndexTuple didx = idx;
      didx.push_back(k);
      sys.add_row(std::move(row), dt.at(didx));
    }
  });
  sys.dedupe();
  return sys;
}

// ---------------------------------------------------------------------------
// solvers
// ---------------------------------------------------------------------------

namespace {

SolutionSpace package(const AffineSolution& sol, const std::vector<std::string>& names, int n) {
  SolutionSpace out;
  out.status = sol.status;
  out.confidence = sol.confidence;
  out.names = names;
  if (sol.status == SolveStatus::inconsistent) return out;
  auto split = [&](const std::vector<Expr>& flat) {
    std::map<std::string, OneForm> forms;
    for (std::size_t b = 0; b < names.size(); ++b) {
      OneForm f = OneForm::zeros(n);
      for (int c = 0; c < n; ++c)
        f.components[static_cast<std::size_t>(c)] =
            flat[b * static_cast<std::size_t>(n) + static_cast<std::size_t>(c)];
      forms[names[b]] = std::move(f);
    }
    return forms;
  };
  out.particular = split(sol.particular);
  for (const auto& vec : sol.basis) out.basis.push_back(split(vec));
  return out;
}

SolutionSpace degenerate_space(const std::vector<std::string>& names, int n,
                               Confidence conf) {
  SolutionSpace out;
  out.status = SolveStatus::degenerate;
  out.confidence = conf;
  out.names = names;
  for (const auto& nm : names) out.particular[nm] = OneForm::zeros(n);
  return out;
}

}  // namespace

SolutionSpace solve_wc_general(const MetricSpec& m, const TensorField& t) {
  const int n = m.dimension();
  Confidence conf = Confidence::exact;
  if (tensor_is_zero(t, m, conf)) return degenerate_space({"A", "B", "D"}, n, conf);
  LinearSystem sys = build_cyclic_system(m, t, 3);
  AffineSolution sol = solve_linear_system(sys, m.symbols(), m.probe_seed());
  return package(sol, {"A", "B", "D"}, n);
}

SolutionSpace solve_wc_reduced(const MetricSpec& m, const TensorField& t) {
  const int n = m.dimension();
  Confidence conf = Confidence::exact;
  if (tensor_is_zero(t, m, conf)) return degenerate_space({"E"}, n, conf);
  LinearSystem sys = build_cyclic_system(m, t, 1);
  AffineSolution sol = solve_linear_system(sys, m.symbols(), m.probe_seed());
  return package(sol, {"E"}, n);
}

SolutionSpace solve_weak(const MetricSpec& m, const TensorField& t) {
  const int n = m.dimension();
  Confidence conf = Confidence::exact;
  if (tensor_is_zero(t, m, conf)) return degenerate_space({"A", "B", "D"}, n, conf);
  LinearSystem sys = build_weak_system(m, t);
  AffineSolution sol = solve_linear_system(sys, m.symbols(), m.probe_seed());
  return package(sol, {"A", "B", "D"}, n);
}

SolutionSpace check_recurrent(const MetricSpec& m, const TensorField& t) {
  const int n = m.dimension();
  Confidence conf = Confidence::exact;
  if (tensor_is_zero(t, m, conf)) {
    // vacuously recurrent; pi = 0 is admissible
    SolutionSpace out = degenerate_space({"pi"}, n, conf);
    return out;
  }
  LinearSystem sys = build_recurrence_system(m, t);
  AffineSolution sol = solve_linear_system(sys, m.symbols(), m.probe_seed());
  return package(sol, {"pi"}, n);
}

std::map<std::string, OneForm> family_member(const SolutionSpace& sol,
                                             const std::vector<Rational>& c) {
  if (static_cast<int>(c.size()) != sol.family_dimension())
    throw Error("family_member: coefficient count does not match family dimension");
  std::map<std::string, OneForm> out = sol.particular;
  for (std::size_t b = 0; b < sol.basis.size(); ++b) {
    Expr coeff = Expr::rational(c[b]);
    for (auto& [name, form] : out) {
      const OneForm& dir = sol.basis[b].at(name);
      for (std::size_t i = 0; i < form.components.size(); ++i)
        form.components[i] = form.components[i] + coeff * dir.components[i];
    }
  }
  return out;
}

bool family_contains(const SolutionSpace& sol, const std::map<std::string, OneForm>& candidate,
                     const MetricSpec& m) {
  if (!sol.solvable()) return false;
  // Solve sum_b c_b * basis_b = candidate - particular for scalars c_b, then
  // demand each c_b be coordinate-free.
  const int n = m.dimension();
  LinearSystem sys;
  sys.unknowns = sol.basis.size();
  for (const auto& name : sol.names) {
    auto it = candidate.find(name);
    if (it == candidate.end()) return false;
    for (int i = 0; i < n; ++i) {
      std::vector<Expr> row(sys.unknowns);
      for (std::size_t b = 0; b < sol.basis.size(); ++b)
        row[b] = sol.basis[b].at(name).components[static_cast<std::size_t>(i)];
      Expr rhs = it->second.components[static_cast<std::size_t>(i)] -
                 sol.particular.at(name).components[static_cast<std::size_t>(i)];
      sys.add_row(std::move(row), std::move(rhs));
    }
  }
  sys.dedupe();
  if (sys.rows.empty()) return true;
  AffineSolution fit = solve_linear_system(sys, m.symbols(), m.probe_seed());
  if (fit.status == SolveStatus::inconsistent) return false;
  std::set<SymbolId> coords;
  for (int i = 0; i < n; ++i) coords.insert(m.chart().coordinate(i));
  for (const auto& c : fit.particular)
    for (SymbolId s : free_symbols(c))
      if (coords.count(s)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Gray classes
// ---------------------------------------------------------------------------

GrayVerdict gray_class_checks(const MetricSpec& m) {
  TensorField S = ricci(m);
  TensorField dS = nabla(S, m);
  const int n = m.dimension();
  GrayVerdict out;
  out.class_a = true;
  out.class_b = true;
  TensorField cyc = cyclic_covariant_sum(S, m);
  cyc.for_each_canonical([&](const IndexTuple& idx) {
    if (!out.class_a) return;
    ZeroCheck zc = check_zero(cyc.at(idx), m.symbols(), m.probe_seed());
    if (!zc.zero) out.class_a = false;
    else if (zc.confidence == Confidence::numeric) out.confidence = Confidence::numeric;
  });
  for (int i = 0; i < n && out.class_b; ++i)
    for (int j = 0; j < n && out.class_b; ++j)
      for (int k = j + 1; k < n && out.class_b; ++k) {
        Expr diff = dS.at({i, j, k}) - dS.at({i, k, j});
        ZeroCheck zc = check_zero(diff, m.symbols(), m.probe_seed());
        if (!zc.zero) out.class_b = false;
        else if (zc.confidence == Confidence::numeric) out.confidence = Confidence::numeric;
      }
  return out;
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::inconsistent:
      return "inconsistent";
    case SolveStatus::unique:
      return "unique";
    case SolveStatus::family:
      return "family";
    case SolveStatus::degenerate:
      return "degenerate";
  }
  return "?";
}

std::string to_string(RankOneVerdict v) {
  switch (v) {
    case RankOneVerdict::einstein:
      return "einstein";
    case RankOneVerdict::quasi_einstein:
      return "quasi-einstein";
    case RankOneVerdict::rank_one_null:
      return "rank-one-null-generator";
    case RankOneVerdict::none:
      return "none";
    case RankOneVerdict::indeterminate:
      return "indeterminate";
  }
  return "?";
}

std::string to_string(StructureId id) {
  switch (id) {
    case StructureId::wczs:
      return "wczs";
    case StructureId::wcrs:
      return "wcrs";
    case StructureId::wzs:
      return "wzs";
    case StructureId::wrs:
      return "wrs";
    case StructureId::recurrent:
      return "recurrent";
    case StructureId::ricci_recurrent:
      return "ricci-recurrent";
    case StructureId::gray_a:
      return "gray-a";
    case StructureId::codazzi:
      return "codazzi";
    case StructureId::quasi_einstein:
      return "quasi-einstein";
  }
  return "?";
}

const ConditionResult* StructureReport::find(StructureId id, const std::string& tensor) const {
  for (const auto& c : conditions)
    if (c.id == id && (tensor.empty() || c.tensor == tensor)) return &c;
  return nullptr;
}

}  // namespace zsym
