#pragma once

#include <cstddef>
#include <vector>

namespace ridgepcr {

/// p_k(x) = sum_{i=0}^k x (1 - x^2)^i prod_{j=1}^i (2j - 1) / (2j), the odd
/// polynomial converging to sgn(x) on [-1, 1]. Evaluated with the term
/// recurrence t_{i+1} = t_i (1 - x^2) (2i + 1) / (2i + 2).
/// Throws DomainError for |x| > 1.
double p_k_eval(double x, std::size_t k);

struct SignPolyDegree {
  std::size_t k = 1;
  double alpha = 1.0;
  double eps = 0.5;
};

/// k = ceil(alpha^-2 ln(1/eps)): |sgn(x) - p_k(x)| <= eps for |x| >= alpha.
SignPolyDegree sign_poly_degree(double alpha, double eps);

/// (x sqrt(k))^-1 exp(-k x^2), an upper bound on sgn(x) - p_k(x) for x in (0, 1].
double sign_error_bound(double x, std::size_t k);

/// int_0^x (1 - y^2)^k dy / int_0^1 (1 - y^2)^k dy by adaptive Gauss-Kronrod
/// quadrature to absolute tolerance quad_tol. Independent of p_k_eval; used
/// to check it. Throws ConvergenceError when the error estimate stays above
/// quad_tol.
double integral_step_oracle(double x, std::size_t k, double quad_tol);

/// Polynomial with coefficients in the monomial or Chebyshev (first kind) basis.
struct CompressedPoly {
  enum class Basis { monomial, chebyshev };

  Basis basis = Basis::chebyshev;
  std::vector<double> coefficients;

  std::size_t degree() const noexcept {
    return coefficients.empty() ? 0 : coefficients.size() - 1;
  }
  /// Clenshaw recurrence for the Chebyshev basis, Horner for monomials
  /// (monomial evaluation is refused above degree 30).
  double operator()(double x) const;
};

inline constexpr std::size_t kMaxMonomialDegree = 30;

/// Truncation of the Chebyshev expansion of x^s to degree <= d:
///   x^s = 2^{1-s} sum_j C(s, j) T_{s-2j}(x)   (middle term halved for even s),
/// keeping the terms with s - 2j <= d. Sup error on [-1, 1] is at most
/// 2 exp(-d^2 / (2s)); zero when d >= s.
CompressedPoly chebyshev_monomial_approx(std::size_t s, std::size_t d);

struct CompressedSignPoly {
  CompressedPoly poly;
  std::size_t uncompressed_k = 0;  // k of the p_k being compressed
  std::size_t inner_degree = 0;    // d used for each (1 - x^2)^i
  double grid_error = 0.0;         // max |sgn(x) - q(x)| over |x| in [alpha, 1] on the grid
};

/// Replaces every (1 - x^2)^i in p_k, k = ceil(alpha^-2 ln(2/eps)), with its
/// degree-d Chebyshev truncation, d = ceil(sqrt(2k ln(2(k+1)/eps))). The result
/// is checked on a 10^4-point grid; d is doubled once if the check fails and
/// DomainError is thrown if it still fails.
CompressedSignPoly compressed_sign_poly(double alpha, double eps);

/// Uniform grid of n points on [lo, hi], endpoints included.
std::vector<double> uniform_grid(double lo, double hi, std::size_t n);

inline constexpr std::size_t kDefaultGridPoints = 10000;

}  // namespace ridgepcr
