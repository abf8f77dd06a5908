#include "ridgepcr/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "ridgepcr/errors.hpp"

namespace ridgepcr {

Vector gram_apply(const DesignMatrix& a, const Vector& x) {
  return a.multiply_transpose(a.multiply(x));
}

double gram_norm(const DesignMatrix& a, const Vector& x) { return a.multiply(x).norm(); }

std::size_t SvdFactors::kept_rank(double lambda) const {
  std::size_t k = 0;
  while (k < rank() && singular_values[static_cast<Eigen::Index>(k)] *
                               singular_values[static_cast<Eigen::Index>(k)] >=
                           lambda) {
    ++k;
  }
  return k;
}

namespace {

// Orthogonalizes the columns of w in place, accumulating the rotations in v.
void hestenes_sweeps(Eigen::MatrixXd& w, Eigen::MatrixXd& v) {
  const Eigen::Index m = w.cols();
  const double tol = std::numeric_limits<double>::epsilon() * static_cast<double>(w.rows());
  constexpr int kMaxSweeps = 80;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < m; ++p) {
      for (Eigen::Index q = p + 1; q < m; ++q) {
        const double alpha = w.col(p).squaredNorm();
        const double beta = w.col(q).squaredNorm();
        const double gamma = w.col(p).dot(w.col(q));
        if (gamma == 0.0 || std::abs(gamma) <= tol * std::sqrt(alpha * beta)) {
          continue;
        }
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;

        for (auto* mat : {&w, &v}) {
          for (Eigen::Index i = 0; i < mat->rows(); ++i) {
            const double xp = (*mat)(i, p);
            const double xq = (*mat)(i, q);
            (*mat)(i, p) = c * xp - s * xq;
            (*mat)(i, q) = s * xp + c * xq;
          }
        }
      }
    }
    if (!rotated) {
      return;
    }
  }
  throw ConvergenceError("Jacobi SVD did not converge", 0.0);
}

}  // namespace

SvdFactors svd_small(const DesignMatrix& a) {
  if (std::min(a.rows(), a.cols()) > kSvdMaxMinDimension) {
    throw DomainError("svd_small is limited to min(n, d) <= 2000");
  }
  const bool transposed = a.rows() < a.cols();
  Eigen::MatrixXd w = a.to_dense();
  if (transposed) {
    w.transposeInPlace();
  }
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(w.cols(), w.cols());
  hestenes_sweeps(w, v);

  const Eigen::Index m = w.cols();
  Vector norms = w.colwise().norm().transpose();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return norms[i] > norms[j]; });

  const double sigma1 = m > 0 ? norms[order.front()] : 0.0;
  if (!(sigma1 > 0.0)) {
    throw DomainError("rank zero");
  }
  Eigen::Index r = 0;
  while (r < m && norms[order[static_cast<std::size_t>(r)]] > kRankCutoff * sigma1) {
    ++r;
  }

  SvdFactors f;
  f.singular_values.resize(r);
  Eigen::MatrixXd left(w.rows(), r);
  Eigen::MatrixXd right(v.rows(), r);
  for (Eigen::Index j = 0; j < r; ++j) {
    const Eigen::Index src = order[static_cast<std::size_t>(j)];
    f.singular_values[j] = norms[src];
    left.col(j) = w.col(src) / norms[src];
    right.col(j) = v.col(src);
  }
  if (transposed) {
    f.u = std::move(right);
    f.v = std::move(left);
  } else {
    f.u = std::move(left);
    f.v = std::move(right);
  }
  return f;
}

Vector exact_projection(const SvdFactors& f, double lambda, const Vector& y) {
  if (!(lambda > 0.0)) {
    throw DomainError("lambda must be positive");
  }
  if (static_cast<std::size_t>(y.size()) != f.n_cols()) {
    throw DimensionError("exact_projection", f.n_cols(), static_cast<std::size_t>(y.size()));
  }
  const auto k = static_cast<Eigen::Index>(f.kept_rank(lambda));
  const auto vk = f.v.leftCols(k);
  return vk * (vk.transpose() * y);
}

Vector exact_pcr(const SvdFactors& f, double lambda, const Vector& b) {
  if (!(lambda > 0.0)) {
    throw DomainError("lambda must be positive");
  }
  if (static_cast<std::size_t>(b.size()) != f.n_rows()) {
    throw DimensionError("exact_pcr", f.n_rows(), static_cast<std::size_t>(b.size()));
  }
  const auto k = static_cast<Eigen::Index>(f.kept_rank(lambda));
  Vector coeffs = f.u.leftCols(k).transpose() * b;
  coeffs.array() /= f.singular_values.head(k).array();
  return f.v.leftCols(k) * coeffs;
}

double spectral_norm_estimate(const DesignMatrix& a, double tol, std::size_t max_iters,
                              std::uint64_t seed) {
  if (!(tol > 0.0 && tol < 1.0)) {
    throw DomainError("spectral_norm_estimate: tol must lie in (0, 1)");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector v(static_cast<Eigen::Index>(a.cols()));
  for (auto& x : v) {
    x = normal(rng);
  }
  v.normalize();

  double rho = 0.0;
  for (std::size_t it = 0; it < max_iters; ++it) {
    Vector gv = gram_apply(a, v);
    rho = v.dot(gv);
    const double residual = (gv - rho * v).norm();
    if (it == 0 && gv.norm() == 0.0) {
      // A random start is annihilated only by the zero matrix.
      if (a.frobenius_norm() == 0.0) {
        throw DomainError("spectral_norm_estimate: zero matrix");
      }
    }
    if (rho > 0.0 && residual <= tol * rho) {
      return std::sqrt(rho);
    }
    const double norm = gv.norm();
    if (norm == 0.0) {
      throw ConvergenceError("power iteration collapsed to the null space", rho);
    }
    v = gv / norm;
  }
  throw ConvergenceError("power iteration did not converge; last Rayleigh quotient " +
                             std::to_string(rho),
                         rho);
}

MatrixStats stats_from_sigma1(const DesignMatrix& a, double lambda, double sigma1) {
  if (!(lambda > 0.0)) {
    throw DomainError("lambda must be positive");
  }
  MatrixStats s;
  s.sigma1_estimate = sigma1;
  s.kappa_lambda = sigma1 * sigma1 / lambda;
  const double fro = a.frobenius_norm();
  s.stable_rank = sigma1 > 0.0 ? fro * fro / (sigma1 * sigma1) : 1.0;
  return s;
}

MatrixStats compute_stats(const DesignMatrix& a, double lambda, std::uint64_t seed) {
  const double estimate = spectral_norm_estimate(a, kStatsPowerTolerance, 100000, seed);
  return stats_from_sigma1(a, lambda, estimate * (1.0 + kStatsPowerTolerance));
}

}  // namespace ridgepcr
