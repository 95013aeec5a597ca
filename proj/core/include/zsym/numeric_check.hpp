#pragma once

#include "zsym/linear_solver.hpp"
#include "zsym/metric.hpp"
#include "zsym/structures.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace zsym {

/// Result of cross-validating the symbolic pipeline against a purely numeric
/// finite-difference pipeline (metric values only; all derivatives by
/// fourth-order central differences).
struct NumericValidation {
  std::uint64_t seed = 0;
  int points = 0;
  double tolerance = 0;
  double max_rel_error = 0;
  bool passed = false;

  struct Failure {
    std::string tensor;
    IndexTuple index;
    double symbolic;
    double numeric;
    double rel_error;
  };
  std::vector<Failure> failures;
};

/// Compares every Gamma, R, S, nabla R and nabla S component at `points`
/// random admissible points. Relative error is measured against
/// max(1, |symbolic|, |numeric|).
NumericValidation validate_against_finite_differences(const MetricSpec& m, std::uint64_t seed,
                                                      int points, double tol);

/// Numeric cross-check of a symbolic linear system: evaluates the system at
/// admissible points and solves it in the least-squares sense.
struct NumericSystemCheck {
  double max_residual = 0;        // least-squares residual norm, worst point
  double max_family_distance = 0; // distance of the LS solution from the
                                  // evaluated affine family (when provided)
  int points = 0;
};

NumericSystemCheck least_squares_system_check(const LinearSystem& sys,
                                              const AffineSolution* family,
                                              const SymbolTable& symbols, std::uint64_t seed,
                                              int points);

}  // namespace zsym
