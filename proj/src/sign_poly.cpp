#include "ridgepcr/sign_poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/binomial.hpp>

#include "ridgepcr/errors.hpp"

namespace ridgepcr {

namespace {

// ceil() that ignores a few ulps of excess, so alpha^-2 ln(1/eps) landing a
// rounding error above an integer does not bump k.
std::size_t ceil_tolerant(double v) {
  const double r = std::round(v);
  if (std::abs(v - r) <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, v)) {
    return static_cast<std::size_t>(std::max(r, 1.0));
  }
  return static_cast<std::size_t>(std::max(std::ceil(v), 1.0));
}

// C(s, j) 2^{1-s}
double halved_binomial(std::size_t s, std::size_t j) {
  if (s <= 1000) {
    const double c = boost::math::binomial_coefficient<double>(static_cast<unsigned>(s),
                                                               static_cast<unsigned>(j));
    return std::ldexp(c, 1 - static_cast<int>(s));
  }
  const auto sd = static_cast<double>(s);
  const auto jd = static_cast<double>(j);
  return std::exp(std::lgamma(sd + 1.0) - std::lgamma(jd + 1.0) - std::lgamma(sd - jd + 1.0) +
                  (1.0 - sd) * std::numbers::ln2);
}

// Chebyshev coefficients of the truncated expansion of u^s; s = 0 gives 1.
std::vector<double> monomial_chebyshev_coefficients(std::size_t s, std::size_t d) {
  if (s == 0) {
    return {1.0};
  }
  std::size_t max_degree = 0;
  bool any = false;
  for (std::size_t j = 0; 2 * j <= s; ++j) {
    const std::size_t deg = s - 2 * j;
    if (deg <= d) {
      max_degree = std::max(max_degree, deg);
      any = true;
    }
  }
  if (!any) {
    return {0.0};
  }
  std::vector<double> c(max_degree + 1, 0.0);
  for (std::size_t j = 0; 2 * j <= s; ++j) {
    const std::size_t deg = s - 2 * j;
    if (deg > d) {
      continue;
    }
    double coeff = halved_binomial(s, j);
    if (deg == 0) {
      coeff *= 0.5;
    }
    c[deg] += coeff;
  }
  return c;
}

double clenshaw(const std::vector<double>& c, double x) {
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t j = c.size(); j-- > 1;) {
    const double b0 = 2.0 * x * b1 - b2 + c[j];
    b2 = b1;
    b1 = b0;
  }
  return (c.empty() ? 0.0 : c[0]) + x * b1 - b2;
}

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

double p_k_eval(double x, std::size_t k) {
  if (!(std::abs(x) <= 1.0)) {
    throw DomainError("p_k_eval: x must lie in [-1, 1]");
  }
  const double damp = 1.0 - x * x;
  double term = x;
  double sum = x;
  for (std::size_t i = 0; i < k; ++i) {
    const auto id = static_cast<double>(i);
    term *= damp * (2.0 * id + 1.0) / (2.0 * id + 2.0);
    sum += term;
  }
  // |p_k| <= 1 on [-1, 1]; trims rounding excursions near |x| = 1.
  return std::clamp(sum, -1.0, 1.0);
}

SignPolyDegree sign_poly_degree(double alpha, double eps) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("sign_poly_degree: alpha must lie in (0, 1]");
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw DomainError("sign_poly_degree: eps must lie in (0, 1)");
  }
  return {ceil_tolerant(std::log(1.0 / eps) / (alpha * alpha)), alpha, eps};
}

double sign_error_bound(double x, std::size_t k) {
  if (!(x > 0.0 && x <= 1.0)) {
    throw DomainError("sign_error_bound: x must lie in (0, 1]");
  }
  if (k == 0) {
    throw DomainError("sign_error_bound: k must be at least 1");
  }
  const auto kd = static_cast<double>(k);
  return std::exp(-kd * x * x) / (x * std::sqrt(kd));
}

double integral_step_oracle(double x, std::size_t k, double quad_tol) {
  if (!(std::abs(x) <= 1.0)) {
    throw DomainError("integral_step_oracle: x must lie in [-1, 1]");
  }
  if (!(quad_tol > 0.0 && quad_tol <= 1e-6)) {
    throw DomainError("integral_step_oracle: quad_tol must lie in (0, 1e-6]");
  }
  if (x == 0.0) {
    return 0.0;
  }
  const auto kd = static_cast<double>(k);
  auto integrand = [kd](double y) { return std::pow(1.0 - y * y, kd); };
  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 61>;
  constexpr unsigned kMaxDepth = 20;
  const double rel_tol = std::max(quad_tol * 0.1, 8.0 * std::numeric_limits<double>::epsilon());

  double err_den = 0.0;
  const double den = Quadrature::integrate(integrand, 0.0, 1.0, kMaxDepth, rel_tol, &err_den);
  // Substitute y = |x| t so both integrals run over [0, 1].
  const double ax = std::abs(x);
  auto scaled = [kd, ax](double t) { return ax * std::pow(1.0 - ax * ax * t * t, kd); };
  double err_num = 0.0;
  const double num = Quadrature::integrate(scaled, 0.0, 1.0, kMaxDepth, rel_tol, &err_num);

  // err_* are absolute estimates.
  const double ratio = num / den;
  const double ratio_err = (err_num + ratio * err_den) / den;
  if (!(ratio_err <= quad_tol)) {
    throw ConvergenceError("integral_step_oracle: quadrature did not reach tolerance",
                           ratio_err);
  }
  return std::copysign(ratio, x);
}

double CompressedPoly::operator()(double x) const {
  if (basis == Basis::chebyshev) {
    return clenshaw(coefficients, x);
  }
  if (degree() > kMaxMonomialDegree) {
    throw DomainError("monomial evaluation refused above degree " +
                      std::to_string(kMaxMonomialDegree));
  }
  double acc = 0.0;
  for (std::size_t j = coefficients.size(); j-- > 0;) {
    acc = acc * x + coefficients[j];
  }
  return acc;
}

CompressedPoly chebyshev_monomial_approx(std::size_t s, std::size_t d) {
  if (s == 0 || d == 0) {
    throw DomainError("chebyshev_monomial_approx: s and d must be at least 1");
  }
  return {CompressedPoly::Basis::chebyshev, monomial_chebyshev_coefficients(s, d)};
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  g.back() = hi;
  return g;
}

namespace {

// Chebyshev coefficients (in x) of q(x) = x h(1 - x^2), h given by its
// Chebyshev coefficients in u. Exact interpolation at first-kind nodes; even
// coefficients are zeroed since q is odd.
std::vector<double> odd_composition(const std::vector<double>& h) {
  const std::size_t h_degree = h.size() - 1;
  const std::size_t n = 2 * h_degree + 2;
  std::vector<double> values(n);
  std::vector<double> nodes(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double theta = std::numbers::pi * (static_cast<double>(m) + 0.5) / static_cast<double>(n);
    nodes[m] = std::cos(theta);
    values[m] = nodes[m] * clenshaw(h, 1.0 - nodes[m] * nodes[m]);
  }
  std::vector<double> c(n, 0.0);
  for (std::size_t j = 1; j < n; j += 2) {
    double acc = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      const double theta = std::numbers::pi * static_cast<double>(j) *
                           (static_cast<double>(m) + 0.5) / static_cast<double>(n);
      acc += values[m] * std::cos(theta);
    }
    c[j] = 2.0 * acc / static_cast<double>(n);
  }
  return c;
}

double sign_grid_error(const CompressedPoly& q, double alpha) {
  double worst = 0.0;
  for (double x : uniform_grid(-1.0, 1.0, kDefaultGridPoints)) {
    if (std::abs(x) >= alpha) {
      worst = std::max(worst, std::abs(sgn(x) - q(x)));
    }
  }
  return worst;
}

CompressedPoly compress_p_k(std::size_t k, std::size_t d) {
  std::vector<double> h(1, 0.0);
  double weight = 1.0;  // prod_{j<=i} (2j-1)/(2j)
  for (std::size_t i = 0; i <= k; ++i) {
    if (i > 0) {
      const auto id = static_cast<double>(i);
      weight *= (2.0 * id - 1.0) / (2.0 * id);
    }
    const auto term = monomial_chebyshev_coefficients(i, d);
    if (term.size() > h.size()) {
      h.resize(term.size(), 0.0);
    }
    for (std::size_t j = 0; j < term.size(); ++j) {
      h[j] += weight * term[j];
    }
  }
  return {CompressedPoly::Basis::chebyshev, odd_composition(h)};
}

}  // namespace

CompressedSignPoly compressed_sign_poly(double alpha, double eps) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("compressed_sign_poly: alpha must lie in (0, 1]");
  }
  if (!(eps > 0.0 && eps < 0.5)) {
    throw DomainError("compressed_sign_poly: eps must lie in (0, 0.5)");
  }
  const std::size_t k = ceil_tolerant(std::log(2.0 / eps) / (alpha * alpha));
  const double coeff_sum = static_cast<double>(k + 1);
  std::size_t d = static_cast<std::size_t>(
      std::ceil(std::sqrt(2.0 * static_cast<double>(k) * std::log(coeff_sum / (eps / 2.0)))));

  for (int attempt = 0; attempt < 2; ++attempt, d *= 2) {
    CompressedSignPoly out;
    out.poly = compress_p_k(k, d);
    out.uncompressed_k = k;
    out.inner_degree = d;
    out.grid_error = sign_grid_error(out.poly, alpha);
    if (out.grid_error <= eps) {
      return out;
    }
  }
  throw DomainError("compressed_sign_poly: grid check failed after doubling the degree");
}

}  // namespace ridgepcr
