#pragma once

#include "zsym/chart.hpp"
#include "zsym/expr.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace zsym {

/// Covariant 1-form: one Expr component per coordinate.
struct OneForm {
  std::vector<Expr> components;

  int dimension() const { return static_cast<int>(components.size()); }
  static OneForm zeros(int n) { return OneForm{std::vector<Expr>(static_cast<std::size_t>(n))}; }
};

/// A coordinate-defined semi-Riemannian metric: symmetric matrix of
/// expressions over a chart, an optional Z-tensor scalar phi, and optional
/// named candidate 1-forms (witnesses to verify).
class MetricSpec {
 public:
  explicit MetricSpec(Chart chart);

  const Chart& chart() const { return chart_; }
  int dimension() const { return chart_.dimension(); }
  const SymbolTable& symbols() const { return chart_.symbols(); }

  const Expr& g(int i, int j) const;
  void set_g(int i, int j, Expr value);  // keeps g symmetric

  const std::optional<Expr>& phi() const { return phi_; }
  void set_phi(Expr phi) { phi_ = std::move(phi); }
  Expr phi_or_zero() const { return phi_ ? *phi_ : Expr(); }

  const std::map<std::string, OneForm>& one_forms() const { return one_forms_; }
  void set_one_form(const std::string& name, OneForm form);
  const OneForm* find_one_form(const std::string& name) const;

  /// Seed used by every zero test this metric triggers (pivots, degeneracy,
  /// golden comparisons); deterministic per spec run.
  std::uint64_t probe_seed() const { return probe_seed_; }
  void set_probe_seed(std::uint64_t seed) { probe_seed_ = seed; }

 private:
  Chart chart_;
  std::vector<Expr> g_;  // row-major, kept symmetric
  std::optional<Expr> phi_;
  std::map<std::string, OneForm> one_forms_;
  std::uint64_t probe_seed_ = 0x5eed;
};

}  // namespace zsym
