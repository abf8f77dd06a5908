#pragma once

#include <cstddef>
#include <functional>

#include "ridgepcr/types.hpp"

namespace ridgepcr {

/// Black-box application of a symmetric operator S with spectrum in [0, 1]:
/// ||apply(x) - S x||_2 <= err_bound * ||x||_2. The spectral assumption is
/// the caller's contract and is not checked.
struct OperatorHandle {
  std::size_t dimension = 0;
  std::function<Vector(const Vector&)> apply;
  double err_bound = 0.0;
};

/// Wraps an explicit symmetric matrix as an exact operator.
OperatorHandle exact_operator(Eigen::MatrixXd s);

struct SignIterates {
  Vector t;  // approximates t_k(B) y
  Vector p;  // approximates p_k(B) y
};

/// Runs t_{j+1} = (2j+1)/(2j+2) C(t_j), p_{j+1} = p_j + t_{j+1} for k steps,
/// where C approximates I - B^2. With eps = c.err_bound and eps-accurate
/// starting vectors both outputs are within 7 k eps ||y|| of t_k(B) y and
/// p_k(B) y. Throws BudgetError when k > 1 / (7 eps).
SignIterates apply_sign_stable(const OperatorHandle& c, Vector t0, Vector p0, std::size_t k);

/// State of the step-function recurrence after `k` updates:
///   s_0 = S y, w_0 = s_0 - y/2,
///   w_{k+1} = 4 (2k+1)/(2k+2) S (w_k - S w_k),  s_{k+1} = s_k + w_{k+1}.
/// With an exact operator s_k = (y + p_k(2S - I) y) / 2, and w_k is half the
/// k-th term of p_k(2S - I) y.
class StepIteration {
 public:
  StepIteration(const OperatorHandle& s, const Vector& y);

  void advance();

  const Vector& s() const noexcept { return s_; }
  const Vector& w() const noexcept { return w_; }
  std::size_t k() const noexcept { return k_; }

 private:
  const OperatorHandle* op_;
  Vector s_;
  Vector w_;
  std::size_t k_ = 0;
};

/// Error bound of the derived map C(x) = 4 A(x - A(x)) approximating
/// I - (2S - I)^2 when A has error e: 4 e (2 + e).
double sign_operator_error(double step_operator_error);

/// Largest q for which the recurrence stays inside its error budget
/// (7 q e_C <= 1); unbounded for an exact operator.
std::size_t step_iteration_budget(double step_operator_error);

/// Default q = ceil((2 gamma)^-2 ln(2/eps)); `strict` uses margin gamma
/// instead of 2 gamma, i.e. ceil(gamma^-2 ln(2/eps)).
std::size_t default_step_iterations(double gamma, double eps, bool strict = false);

/// Operator accuracy eps^2 gamma^2 / 8 handed to the step recurrence.
double step_noise_budget(double eps, double gamma);

using StepObserver = std::function<void(std::size_t k, const Vector& s)>;

/// Applies the approximate step function s(S) y with q updates of the
/// recurrence. `observer`, when set, sees s_0 .. s_q.
/// Throws BudgetError if q exceeds step_iteration_budget(S.err_bound).
Vector apply_step(const OperatorHandle& s, const Vector& y, std::size_t q,
                  const StepObserver& observer = {});

/// The scalar map sigma -> (1 + p_q(2 sigma - 1)) / 2 applied by apply_step
/// to each eigenvalue of S.
double soft_step(double sigma, std::size_t q);

}  // namespace ridgepcr
