#include "ridgepcr/step_engine.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "ridgepcr/errors.hpp"
#include "ridgepcr/sign_poly.hpp"

namespace ridgepcr {

namespace {

void check_dimension(const OperatorHandle& op, const Vector& v, const char* what) {
  if (static_cast<std::size_t>(v.size()) != op.dimension) {
    throw DimensionError(what, op.dimension, static_cast<std::size_t>(v.size()));
  }
}

double term_ratio(std::size_t j) {
  const auto jd = static_cast<double>(j);
  return (2.0 * jd + 1.0) / (2.0 * jd + 2.0);
}

std::string format_g(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

}  // namespace

OperatorHandle exact_operator(Eigen::MatrixXd s) {
  OperatorHandle op;
  op.dimension = static_cast<std::size_t>(s.rows());
  op.apply = [m = std::move(s)](const Vector& x) -> Vector { return m * x; };
  op.err_bound = 0.0;
  return op;
}

SignIterates apply_sign_stable(const OperatorHandle& c, Vector t0, Vector p0, std::size_t k) {
  check_dimension(c, t0, "apply_sign_stable t0");
  check_dimension(c, p0, "apply_sign_stable p0");
  if (c.err_bound > 0.0 && static_cast<double>(k) > 1.0 / (7.0 * c.err_bound)) {
    throw BudgetError("error budget exhausted: k = " + std::to_string(k) +
                      " exceeds 1/(7 eps)");
  }
  SignIterates out{std::move(t0), std::move(p0)};
  for (std::size_t j = 0; j < k; ++j) {
    out.t = term_ratio(j) * c.apply(out.t);
    out.p += out.t;
  }
  return out;
}

StepIteration::StepIteration(const OperatorHandle& s, const Vector& y) : op_(&s) {
  check_dimension(s, y, "apply_step");
  s_ = s.apply(y);
  w_ = s_ - 0.5 * y;
}

void StepIteration::advance() {
  Vector inner = w_ - op_->apply(w_);
  w_ = (4.0 * term_ratio(k_)) * op_->apply(inner);
  s_ += w_;
  ++k_;
}

double sign_operator_error(double step_operator_error) {
  return 4.0 * step_operator_error * (2.0 + step_operator_error);
}

std::size_t step_iteration_budget(double step_operator_error) {
  if (!(step_operator_error > 0.0)) {
    return std::numeric_limits<std::size_t>::max();
  }
  const double budget = std::floor(1.0 / (7.0 * sign_operator_error(step_operator_error)));
  if (budget >= static_cast<double>(std::numeric_limits<std::size_t>::max())) {
    return std::numeric_limits<std::size_t>::max();
  }
  return static_cast<std::size_t>(budget);
}

std::size_t default_step_iterations(double gamma, double eps, bool strict) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw DomainError("gamma must lie in (0, 1)");
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw DomainError("eps must lie in (0, 1)");
  }
  const double margin = strict ? gamma : 2.0 * gamma;
  return static_cast<std::size_t>(
      std::max(1.0, std::ceil(std::log(2.0 / eps) / (margin * margin))));
}

double step_noise_budget(double eps, double gamma) { return eps * eps * gamma * gamma / 8.0; }

Vector apply_step(const OperatorHandle& s, const Vector& y, std::size_t q,
                  const StepObserver& observer) {
  if (q > step_iteration_budget(s.err_bound)) {
    throw BudgetError("error budget exhausted: q = " + std::to_string(q) +
                      " exceeds 1/(7 eps') for operator error " + format_g(s.err_bound));
  }
  StepIteration it(s, y);
  if (observer) {
    observer(0, it.s());
  }
  while (it.k() < q) {
    it.advance();
    if (observer) {
      observer(it.k(), it.s());
    }
  }
  return it.s();
}

double soft_step(double sigma, std::size_t q) {
  return 0.5 * (1.0 + p_k_eval(2.0 * sigma - 1.0, q));
}

}  // namespace ridgepcr
