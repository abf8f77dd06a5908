#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "ridgepcr/design_matrix.hpp"
#include "ridgepcr/matrix_core.hpp"
#include "ridgepcr/step_engine.hpp"
#include "ridgepcr/trace.hpp"
#include "ridgepcr/types.hpp"

namespace ridgepcr {

/// Inputs of principal component regression via ridge regression.
struct PcrConfig {
  double lambda = 1.0;
  double gamma = 0.1;
  double eps = 1e-3;
  double delta = 0.1;
  double c1 = 2.0;
  double c2 = 4.0;
  std::optional<std::size_t> q_pcr;  // default ceil(c1 ln(kappa / eps))
  std::optional<double> eps_inner;   // default eps / (c2 q^2 sqrt(kappa))
  std::optional<std::size_t> ridge_max_iters;
};

struct PcrPlan {
  std::size_t q = 0;
  double eps_inner = 0.0;
  double delta_inner = 0.0;  // delta / (2 (q + 1))
};

PcrPlan plan_regression(const PcrConfig& cfg, const MatrixStats& stats);

/// sum_{i=1}^q lambda^{i-1} M^{-i} y0 with M^-1 applied by `ridge_op`,
/// through s_1 = M^-1 y0, s_{i+1} = s_1 + lambda M^-1 s_i. `observer` sees
/// s_1 .. s_q as (i - 1, s_i).
Vector truncated_g_series(std::size_t q, double lambda, const OperatorHandle& ridge_op,
                          const Vector& y0, const StepObserver& observer = {});

/// Approximates A_lambda^+ b: projects A^T b with pc_proj, then applies
/// q_pcr + 1 terms of the series for x / (1 - lambda x) at the ridge inverse.
/// ||s - A_lambda^+ b||_{A^T A} <= eps ||b|| when the gap window holds.
/// Errors from inner solves are rethrown with a stage label.
Vector pc_regress(const DesignMatrix& a, const PcrConfig& cfg, const Vector& b,
                  const MatrixStats& stats);

/// pc_regress plus one record per series step (q_pcr + 1 records): the
/// squared A^T A-norm error relative to the oracle solution. Record 0 is
/// the ridge-only iterate M^-1 P A^T b.
std::pair<Vector, ConvergenceTrace> pc_regress_trace(const DesignMatrix& a, const PcrConfig& cfg,
                                                     const Vector& b, const MatrixStats& stats,
                                                     const SvdFactors& oracle);

struct RegressionError {
  double gram_norm = 0.0;  // ||A (s - ref)||_2
  double two_norm = 0.0;   // ||s - ref||_2
};

RegressionError regression_error(const DesignMatrix& a, const Vector& s, const Vector& reference);

}  // namespace ridgepcr
