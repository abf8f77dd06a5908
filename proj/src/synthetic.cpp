#include "ridgepcr/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/QR>

#include "ridgepcr/errors.hpp"

namespace ridgepcr {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Eigen::MatrixXd gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd g(rows, cols);
  // Column-major fill keeps the draw order independent of Eigen internals.
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      g(i, j) = normal(rng);
    }
  }
  return g;
}

Eigen::MatrixXd orthonormal_columns(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian(rng, rows, cols));
  return qr.householderQ() * Eigen::MatrixXd::Identity(rows, cols);
}

}  // namespace

std::mt19937_64 make_stream(std::uint64_t seed, RngStream stream) {
  return std::mt19937_64(splitmix64(seed + static_cast<std::uint64_t>(stream)));
}

SyntheticProblem gen_synthetic(std::size_t n, std::size_t d, std::size_t top_rank, double gamma,
                               std::uint64_t seed, double noise_level) {
  const std::size_t m = std::min(n, d);
  if (n == 0 || d == 0) {
    throw DomainError("gen_synthetic: n and d must be positive");
  }
  if (top_rank == 0 || top_rank >= m) {
    throw DomainError("gen_synthetic: top_rank must lie in [1, min(n, d))");
  }
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw DomainError("gen_synthetic: gamma must lie in (0, 1)");
  }
  if (!(noise_level >= 0.0)) {
    throw DomainError("gen_synthetic: noise level must be non-negative");
  }

  auto spectrum_rng = make_stream(seed, RngStream::spectrum);
  std::uniform_real_distribution<double> top(kSyntheticLambda * (1.0 + gamma), 1.0);
  std::uniform_real_distribution<double> tail(0.0, kSyntheticLambda * (1.0 - gamma));
  std::vector<double> squared(m);
  for (std::size_t i = 0; i < m; ++i) {
    squared[i] = i < top_rank ? top(spectrum_rng) : tail(spectrum_rng);
  }
  std::sort(squared.begin(), squared.end(), std::greater<>());

  SyntheticProblem p{DesignMatrix::from_dense(DenseMatrix(0, 0)), Vector(), Vector(), Vector(),
                     gamma, kSyntheticLambda, top_rank, seed, noise_level};
  p.singular_values.resize(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    p.singular_values[static_cast<Eigen::Index>(i)] = std::sqrt(squared[i]);
  }

  const auto mi = static_cast<Eigen::Index>(m);
  auto left_rng = make_stream(seed, RngStream::left);
  auto right_rng = make_stream(seed, RngStream::right);
  const Eigen::MatrixXd u = orthonormal_columns(left_rng, static_cast<Eigen::Index>(n), mi);
  const Eigen::MatrixXd v = orthonormal_columns(right_rng, static_cast<Eigen::Index>(d), mi);
  DenseMatrix a = u * p.singular_values.asDiagonal() * v.transpose();
  p.a = DesignMatrix::from_dense(std::move(a));

  auto x_rng = make_stream(seed, RngStream::x_true);
  const Eigen::MatrixXd coeffs = gaussian(x_rng, static_cast<Eigen::Index>(top_rank), 1);
  p.x_true = v.leftCols(static_cast<Eigen::Index>(top_rank)) * coeffs.col(0);

  const Vector response = p.a.multiply(p.x_true);
  auto noise_rng = make_stream(seed, RngStream::noise);
  Vector noise = gaussian(noise_rng, static_cast<Eigen::Index>(n), 1).col(0);
  noise *= noise_level * response.norm() / noise.norm();
  p.b = response + noise;
  return p;
}

double guaranteed_gap(double data_gamma) { return data_gamma / (4.0 * (1.0 + data_gamma)); }

}  // namespace ridgepcr
