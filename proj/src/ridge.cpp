#include "ridgepcr/ridge.hpp"

#include <cmath>
#include <string>

#include "ridgepcr/errors.hpp"

namespace ridgepcr {

namespace {

thread_local std::size_t g_last_iterations = 0;

void validate(const RidgeParams& p) {
  if (!(p.lambda > 0.0)) {
    throw DomainError("ridge: lambda must be positive");
  }
  if (!(p.eps > 0.0 && p.eps < 1.0)) {
    throw DomainError("ridge: eps must lie in (0, 1)");
  }
  if (!(p.delta > 0.0 && p.delta < 1.0)) {
    throw DomainError("ridge: delta must lie in (0, 1)");
  }
}

}  // namespace

std::size_t default_ridge_max_iters(double kappa_lambda, double eps) {
  return 10 * static_cast<std::size_t>(std::ceil(std::sqrt(kappa_lambda + 1.0) *
                                                 std::log(2.0 / eps)));
}

double ridge_stopping_threshold(const MatrixStats& stats, double lambda, double eps,
                                double y_norm) {
  const double s2 = stats.sigma1_estimate * stats.sigma1_estimate;
  return eps * y_norm * std::sqrt(lambda / (s2 + lambda));
}

Vector ridge_solve(const DesignMatrix& a, const RidgeParams& params, const Vector& y,
                   const MatrixStats& stats) {
  validate(params);
  if (static_cast<std::size_t>(y.size()) != a.cols()) {
    throw DimensionError("ridge_solve", a.cols(), static_cast<std::size_t>(y.size()));
  }
  if (!y.allFinite()) {
    throw DomainError("ridge_solve: right-hand side is not finite");
  }

  const double lambda = params.lambda;
  const double y_norm = y.norm();
  Vector x = Vector::Zero(y.size());
  g_last_iterations = 0;
  if (y_norm == 0.0) {
    return x;
  }
  const double threshold = ridge_stopping_threshold(stats, lambda, params.eps, y_norm);
  const std::size_t max_iters =
      params.max_iters.value_or(default_ridge_max_iters(stats.kappa_lambda, params.eps));

  Vector r = y;
  Vector p = r;
  double rr = r.squaredNorm();
  for (std::size_t it = 0; it < max_iters; ++it) {
    if (std::sqrt(rr) <= threshold) {
      g_last_iterations = it;
      return x;
    }
    Vector mp = gram_apply(a, p);
    mp += lambda * p;
    const double alpha = rr / p.dot(mp);
    x += alpha * p;
    r -= alpha * mp;
    const double rr_next = r.squaredNorm();
    p = r + (rr_next / rr) * p;
    rr = rr_next;
  }
  if (std::sqrt(rr) <= threshold) {
    g_last_iterations = max_iters;
    return x;
  }
  throw ConvergenceError("ridge_solve: conjugate gradient hit max_iters with residual " +
                             std::to_string(std::sqrt(rr)),
                         std::sqrt(rr));
}

Vector ridge_apply_gram(const DesignMatrix& a, const RidgeParams& params, const Vector& x,
                        const MatrixStats& stats) {
  return ridge_solve(a, params, gram_apply(a, x), stats);
}

std::size_t last_ridge_iterations() noexcept { return g_last_iterations; }

}  // namespace ridgepcr
