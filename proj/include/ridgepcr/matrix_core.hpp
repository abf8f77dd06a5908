#pragma once

#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

#include "ridgepcr/design_matrix.hpp"
#include "ridgepcr/types.hpp"

namespace ridgepcr {

/// A^T (A x), computed as two matrix-vector products.
Vector gram_apply(const DesignMatrix& a, const Vector& x);

/// ||x||_{A^T A} = ||A x||_2.
double gram_norm(const DesignMatrix& a, const Vector& x);

/// Thin SVD A = U diag(singular_values) V^T restricted to the numerical rank.
/// Desk-scale test oracle; not used by the solvers themselves.
struct SvdFactors {
  Eigen::MatrixXd u;
  Vector singular_values;
  Eigen::MatrixXd v;

  std::size_t rank() const noexcept { return static_cast<std::size_t>(singular_values.size()); }
  std::size_t n_rows() const noexcept { return static_cast<std::size_t>(u.rows()); }
  std::size_t n_cols() const noexcept { return static_cast<std::size_t>(v.rows()); }

  /// Number of leading singular values with sigma^2 >= lambda.
  std::size_t kept_rank(double lambda) const;
};

/// Singular values at or below this fraction of sigma_1 are treated as zero.
inline constexpr double kRankCutoff = 1e-12;
inline constexpr std::size_t kSvdMaxMinDimension = 2000;

/// One-sided (Hestenes) Jacobi SVD. Throws DomainError for a zero matrix or
/// when min(n, d) exceeds kSvdMaxMinDimension.
SvdFactors svd_small(const DesignMatrix& a);

/// V_k V_k^T y, where k counts the singular values with sigma^2 >= lambda.
Vector exact_projection(const SvdFactors& f, double lambda, const Vector& y);

/// V_k Sigma_k^{-1} U_k^T b, the least-squares solution against A_lambda.
Vector exact_pcr(const SvdFactors& f, double lambda, const Vector& b);

/// Seeded power iteration on A^T A. Stops once the eigen-residual
/// ||A^T A v - rho v|| drops below tol * rho and returns sqrt(rho).
/// Throws ConvergenceError carrying the last Rayleigh quotient otherwise.
double spectral_norm_estimate(const DesignMatrix& a, double tol, std::size_t max_iters,
                              std::uint64_t seed);

struct MatrixStats {
  double sigma1_estimate = 0.0;
  double kappa_lambda = 0.0;  // sigma1_estimate^2 / lambda
  double stable_rank = 0.0;   // ||A||_F^2 / sigma1_estimate^2, informational
};

inline constexpr double kStatsPowerTolerance = 1e-3;

/// Estimates sigma_1 to kStatsPowerTolerance and inflates it by the same
/// factor so that the estimate is not below the true value.
MatrixStats compute_stats(const DesignMatrix& a, double lambda, std::uint64_t seed = 0);

/// Builds stats from a known sigma_1 (e.g. from an oracle).
MatrixStats stats_from_sigma1(const DesignMatrix& a, double lambda, double sigma1);

}  // namespace ridgepcr
