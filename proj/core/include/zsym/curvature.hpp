#pragma once

#include "zsym/metric.hpp"
#include "zsym/tensor_field.hpp"

#include <optional>
#include <vector>

namespace zsym {

/// Christoffel symbols of the second kind, symmetric in the lower indices.
class Connection {
 public:
  explicit Connection(int dim);
  int dimension() const { return dim_; }
  const Expr& at(int k, int i, int j) const;
  void set(int k, int i, int j, Expr value);  // stores (i,j) and (j,i)

 private:
  int dim_;
  std::vector<Expr> gamma_;
};

/// Symbolic determinant of the metric matrix.
Expr metric_determinant(const MetricSpec& m);

/// Throws DegenerateMetricError when det(g) is identically zero (zero test
/// seeded by m.probe_seed()).
void require_nondegenerate(const MetricSpec& m);

/// g^{ij}, row-major; g * g^{-1} normalizes to the identity.
std::vector<Expr> inverse_metric(const MetricSpec& m);

/// Levi-Civita connection: Gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij).
Connection christoffel(const MetricSpec& m);

/// Riemann-Christoffel tensor, all indices down. Convention (pinned by the
/// reference tables this library certifies):
///   R^p_ijk = d_j Gamma^p_ki - d_k Gamma^p_ji
///             + Gamma^p_jl Gamma^l_ki - Gamma^p_kl Gamma^l_ji,
///   R_hijk  = g_hp R^p_ijk.
TensorField riemann(const MetricSpec& m);

/// Ricci tensor with the contraction fixed to S_ij = -R^m_imj (the opposite
/// sign of the contraction convention above; pinned by the same tables).
TensorField ricci(const MetricSpec& m);

/// Scalar curvature r = g^{ij} S_ij.
Expr scalar_curvature(const MetricSpec& m);

/// Covariant derivative; the derivative index is appended last, matching the
/// comma notation T_{ij,k}.
TensorField covariant_derivative(const TensorField& t, const MetricSpec& m);
TensorField covariant_derivative(const TensorField& t, const Chart& chart,
                                 const Connection& conn);

/// Z = S + phi g (phi defaults to zero, reducing Z to the Ricci tensor).
TensorField z_tensor(const MetricSpec& m);

/// One-shot bundle for callers that need the whole pipeline.
struct CurvatureData {
  std::vector<Expr> inverse;
  Connection connection;
  TensorField riemann;
  TensorField nabla_riemann;
  TensorField ricci;
  TensorField nabla_ricci;
  Expr scalar;
  std::optional<TensorField> z;
  std::optional<TensorField> nabla_z;
};

CurvatureData compute_curvature(const MetricSpec& m, bool with_z);

}  // namespace zsym
