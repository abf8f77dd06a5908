#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "ridgepcr/design_matrix.hpp"
#include "ridgepcr/types.hpp"

namespace ridgepcr {

/// Random problem A = U diag(sigma) V^T with a controlled spectral gap
/// around lambda = 0.5, plus a noisy response b = A x_true + noise.
///
/// Squared singular values: top_rank of them uniform on [0.5(1+gamma), 1],
/// the rest uniform on [0, 0.5(1-gamma)].
struct SyntheticProblem {
  DesignMatrix a;
  Vector b;
  Vector x_true;
  Vector singular_values;  // descending, length min(n, d)
  double gamma = 0.1;
  double lambda = 0.5;
  std::size_t top_rank = 0;
  std::uint64_t seed = 0;
  double noise_level = 0.1;
};

inline constexpr double kSyntheticLambda = 0.5;
inline constexpr double kDefaultNoiseLevel = 0.1;

/// Independent random streams of the generator. Each stream is an
/// std::mt19937_64 seeded with splitmix64(seed + stream id) ("rpcr-rng-v1").
enum class RngStream : std::uint64_t { spectrum = 1, left = 2, right = 3, x_true = 4, noise = 5 };

std::mt19937_64 make_stream(std::uint64_t seed, RngStream stream);

/// Throws DomainError unless top_rank < min(n, d), top_rank >= 1 and
/// gamma in (0, 1).
SyntheticProblem gen_synthetic(std::size_t n, std::size_t d, std::size_t top_rank, double gamma,
                               std::uint64_t seed, double noise_level = kDefaultNoiseLevel);

/// gamma / (4 (1 + gamma)): the projection gap parameter guaranteed by the
/// construction, i.e. the largest value for which the admissible window
/// holds for every draw with data gap gamma.
double guaranteed_gap(double data_gamma);

}  // namespace ridgepcr
