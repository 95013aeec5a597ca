#pragma once

#include "zsym/curvature.hpp"
#include "zsym/linear_solver.hpp"
#include "zsym/metric.hpp"
#include "zsym/tensor_field.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace zsym {

/// Affine family of named 1-form tuples solving a structure condition.
struct SolutionSpace {
  SolveStatus status = SolveStatus::inconsistent;
  Confidence confidence = Confidence::exact;
  std::vector<std::string> names;  // unknown blocks, e.g. {"A","B","D"}
  std::map<std::string, OneForm> particular;
  std::vector<std::map<std::string, OneForm>> basis;

  int family_dimension() const { return static_cast<int>(basis.size()); }
  bool solvable() const {
    return status == SolveStatus::unique || status == SolveStatus::family ||
           status == SolveStatus::degenerate;
  }
};

/// L_kij = T_ij,k + T_kj,i + T_ik,j; fully symmetric for symmetric T.
TensorField cyclic_covariant_sum(const TensorField& t, const MetricSpec& m);

/// Cyclic condition residual:
/// L_kij - (A_k t_ij + B_i t_kj + D_j t_ik), all slots stored (no symmetry).
TensorField wc_residual(const MetricSpec& m, const TensorField& t, const OneForm& A,
                        const OneForm& B, const OneForm& D);

/// Weak (non-cyclic) residual: t_ij,k - (A_k t_ij + B_i t_kj + D_j t_ik).
TensorField weak_residual(const MetricSpec& m, const TensorField& t, const OneForm& A,
                          const OneForm& B, const OneForm& D);

/// Recurrence residual: t_{...,k} - pi_k t_{...}.
TensorField recurrence_residual(const MetricSpec& m, const TensorField& t, const OneForm& pi);

/// Equation assemblies (rows deduplicated); exposed for the numeric
/// cross-checks in the test suite.
LinearSystem build_cyclic_system(const MetricSpec& m, const TensorField& t, int blocks);
LinearSystem build_weak_system(const MetricSpec& m, const TensorField& t);
LinearSystem build_recurrence_system(const MetricSpec& m, const TensorField& t);

/// Solves the cyclic condition for three independent 1-forms (A, B, D).
SolutionSpace solve_wc_general(const MetricSpec& m, const TensorField& t);

/// Solves the reduced cyclic condition for a single 1-form E.
SolutionSpace solve_wc_reduced(const MetricSpec& m, const TensorField& t);

/// Solves the weak condition nabla_k t_ij = A_k t_ij + B_i t_kj + D_j t_ik.
SolutionSpace solve_weak(const MetricSpec& m, const TensorField& t);

/// Solves nabla t = pi (x) t for a recurrence 1-form pi; degenerate
/// ("vacuously recurrent") when t is identically zero.
SolutionSpace check_recurrent(const MetricSpec& m, const TensorField& t);

/// Membership test: can `candidate` be written as particular + sum of
/// basis vectors with coordinate-free (parameter-only) coefficients?
bool family_contains(const SolutionSpace& sol, const std::map<std::string, OneForm>& candidate,
                     const MetricSpec& m);

/// A member of the family for rational coefficients c (size = family dim).
std::map<std::string, OneForm> family_member(const SolutionSpace& sol,
                                             const std::vector<Rational>& c);

struct GrayVerdict {
  bool class_a = false;  // cyclic parallel Ricci tensor
  bool class_b = false;  // Codazzi-type Ricci tensor
  Confidence confidence = Confidence::exact;
};

GrayVerdict gray_class_checks(const MetricSpec& m);

enum class RankOneVerdict : std::uint8_t {
  einstein,
  quasi_einstein,
  rank_one_null,
  none,
  indeterminate
};

std::string to_string(RankOneVerdict v);
std::string to_string(SolveStatus s);

struct RankOneReport {
  RankOneVerdict verdict = RankOneVerdict::indeterminate;
  std::optional<Expr> scale;          // a with rank(S - a g) <= 1
  std::optional<Expr> trace_factor;   // b = r - n a
  std::optional<OneForm> generator;   // unnormalized eta
  std::string causal_character;       // timelike / spacelike / null
  std::vector<int> eigen_multiplicities;  // clustered pattern of g^{-1} S
  Confidence confidence = Confidence::exact;
  std::string note;
};

/// Einstein / quasi-Einstein / rank-one-null classification of the Ricci
/// tensor: numeric eigenstructure of g^{-1}S at sample points plus symbolic
/// confirmation (or refutation) of all 2x2 minors of S - a g for the only
/// algebraically possible scales a.
RankOneReport rank_one_ricci_decomposition(const MetricSpec& m);

enum class StructureId : std::uint8_t {
  wczs,
  wcrs,
  wzs,
  wrs,
  recurrent,
  ricci_recurrent,
  gray_a,
  codazzi,
  quasi_einstein
};

std::string to_string(StructureId id);

struct ConditionResult {
  StructureId id;
  std::string tensor;  // "S", "Z", "R"
  bool applicable = true;
  std::optional<SolutionSpace> solution;
  std::optional<bool> holds;  // boolean-style checks (gray classes)
  std::string note;
  std::string error;  // solver error captured without aborting other checks
};

struct StructureReport {
  std::vector<ConditionResult> conditions;
  GrayVerdict gray;
  RankOneReport rank_one;
  std::optional<bool> proper_wczs;
  std::optional<bool> proper_wcrs;
  /// Remark-style uniqueness analysis of the cyclic solution on Z (or S when
  /// no phi is present): is A = B = D forced across the whole family?
  std::optional<bool> forces_equal_forms;
  std::optional<OneForm> f_form;  // F = B - D on the particular solution
  std::optional<bool> f_is_zero;

  const ConditionResult* find(StructureId id, const std::string& tensor) const;
};

/// Runs every structure check; per-condition errors are recorded, not thrown.
StructureReport classify(const MetricSpec& m);

}  // namespace zsym
