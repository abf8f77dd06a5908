#pragma once

#include <cstddef>
#include <optional>

#include "ridgepcr/design_matrix.hpp"
#include "ridgepcr/matrix_core.hpp"
#include "ridgepcr/types.hpp"

namespace ridgepcr {

/// Parameters of one ridge solve (A^T A + lambda I) x = y.
///
/// `delta` is the failure probability allowed by the randomized solvers the
/// contract was written for. The conjugate gradient solver used here is
/// deterministic and never fails that way, so `delta` is validated and
/// otherwise ignored.
struct RidgeParams {
  double lambda = 1.0;
  double eps = 1e-6;
  double delta = 0.1;
  std::optional<std::size_t> max_iters;  // defaults to default_ridge_max_iters()
};

/// 10 * ceil(sqrt(kappa_lambda + 1) * ln(2 / eps)).
std::size_t default_ridge_max_iters(double kappa_lambda, double eps);

/// Residual threshold eps * ||y|| * sqrt(lambda / (sigma1^2 + lambda)).
/// A residual below it certifies ||x - x*||_M <= eps ||y||_{M^-1}.
double ridge_stopping_threshold(const MatrixStats& stats, double lambda, double eps,
                                double y_norm);

/// Conjugate gradient on M = A^T A + lambda I, started from zero, returning
/// x with ||x - M^-1 y||_M <= eps ||y||_{M^-1}. M is never formed.
///
/// `stats.sigma1_estimate` must not underestimate sigma_1 by more than 0.1%.
/// Throws ConvergenceError (carrying the final residual norm) when max_iters
/// is reached first.
Vector ridge_solve(const DesignMatrix& a, const RidgeParams& params, const Vector& y,
                   const MatrixStats& stats);

/// Approximates B x with B = (A^T A + lambda I)^-1 A^T A; error in the
/// 2-norm is at most (sigma_1 / sqrt(lambda)) * eps * ||x||.
Vector ridge_apply_gram(const DesignMatrix& a, const RidgeParams& params, const Vector& x,
                        const MatrixStats& stats);

/// Number of conjugate gradient iterations used by the last ridge_solve on
/// this thread (diagnostics only).
std::size_t last_ridge_iterations() noexcept;

}  // namespace ridgepcr
