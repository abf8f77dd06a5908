#pragma once

#include <cstddef>

#include "ridgepcr/design_matrix.hpp"
#include "ridgepcr/matrix_core.hpp"
#include "ridgepcr/synthetic.hpp"
#include "ridgepcr/trace.hpp"
#include "ridgepcr/types.hpp"

namespace ridgepcr {

struct ConvergenceRequest {
  ConvergenceTrace::Algorithm algorithm = ConvergenceTrace::Algorithm::projection;
  double lambda = kSyntheticLambda;
  double gamma = 0.1;  // gap parameter handed to the algorithm
  double eps = 1e-4;
  std::size_t max_q = 0;  // outer iterations (projection) or series steps (regression)
};

/// Runs one algorithm with max_q iterations against the SVD oracle of `a`.
///
/// Projection: `rhs` is y (length d), or b (length n), in which case
/// y = A^T b. Errors are ||s_k - P y|| / ||P y||.
/// Regression: `rhs` is b. Errors are
/// ||s_k - A_lambda^+ b||^2_{A^T A} / ||A_lambda^+ b||^2_{A^T A}.
ConvergenceTrace run_convergence(const DesignMatrix& a, const Vector& rhs,
                                 const ConvergenceRequest& request);

/// Same on a synthetic problem, with gamma = guaranteed_gap(problem.gamma),
/// lambda = problem.lambda and y = A^T b for projection.
ConvergenceTrace run_convergence(const SyntheticProblem& problem,
                                 ConvergenceTrace::Algorithm algorithm, double eps,
                                 std::size_t max_q);

/// Least-squares fit of log10(rel_error) against iteration over records
/// with iteration >= burn_in and positive error.
struct LogLinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

LogLinearFit fit_log_error(const ConvergenceTrace& trace, std::size_t burn_in);

}  // namespace ridgepcr
