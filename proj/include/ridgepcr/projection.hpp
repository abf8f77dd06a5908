#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "ridgepcr/design_matrix.hpp"
#include "ridgepcr/matrix_core.hpp"
#include "ridgepcr/trace.hpp"
#include "ridgepcr/types.hpp"

namespace ridgepcr {

/// Inputs of principal component projection.
///
/// gamma is the gap parameter of the admissible window
///   sigma_{k+1}^2 / (1 - 4 gamma) <= lambda <= (1 - 4 gamma) sigma_k^2,
/// under which every eigenvalue of B = (A^T A + lambda I)^-1 A^T A is at
/// least gamma away from 1/2. Outside the window the result degrades to a
/// soft projection rather than failing.
struct ProjectionConfig {
  double lambda = 1.0;
  double gamma = 0.1;
  double eps = 1e-4;
  double delta = 0.1;
  /// When set, q = ceil(c1 gamma^-2 ln(1/eps)). When unset q follows
  /// default_step_iterations(gamma, eps, strict_gap).
  std::optional<double> c1;
  double c2 = 8.0;
  std::optional<std::size_t> q_override;
  std::optional<double> eps_inner_override;
  bool strict_gap = false;
  std::optional<std::size_t> ridge_max_iters;  // per ridge solve; default from the CG bound
};

/// Quantities derived from a ProjectionConfig and the matrix statistics.
struct ProjectionPlan {
  std::size_t q = 0;                 // outer iterations
  double eps_inner = 0.0;            // ridge accuracy eps^2 gamma^2 / (c2 sqrt(kappa))
  double delta_inner = 0.0;          // delta / (2q), kept for interface fidelity
  double operator_error = 0.0;       // sqrt(kappa) * eps_inner, error of each B application
};

/// Validates `cfg` and derives the plan. For a derived q, throws BudgetError
/// unless 7 q operator_error <= eps.
ProjectionPlan plan_projection(const ProjectionConfig& cfg, const MatrixStats& stats);

/// Projects y onto the span of the right singular vectors with
/// sigma^2 >= lambda using only ridge solves: ||s - P y|| <= eps ||y|| when
/// the gap window holds. Ridge failures are rethrown as ConvergenceError
/// naming the outer iteration.
Vector pc_proj(const DesignMatrix& a, const ProjectionConfig& cfg, const Vector& y,
               const MatrixStats& stats);

/// pc_proj plus the relative error of every outer iterate (q + 1 records),
/// measured against the oracle projection when given, else against the
/// final iterate.
std::pair<Vector, ConvergenceTrace> pc_proj_trace(const DesignMatrix& a,
                                                  const ProjectionConfig& cfg, const Vector& y,
                                                  const MatrixStats& stats,
                                                  const SvdFactors* oracle = nullptr);

/// Largest gamma for which the window holds given the squared singular
/// values on either side of lambda.
double admissible_gap(double lambda, double sigma_k_sq, double sigma_k1_sq);

}  // namespace ridgepcr
