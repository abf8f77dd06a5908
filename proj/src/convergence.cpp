#include "ridgepcr/convergence.hpp"

#include <cmath>

#include "ridgepcr/errors.hpp"
#include "ridgepcr/projection.hpp"
#include "ridgepcr/regression.hpp"

namespace ridgepcr {

std::string to_string(ConvergenceTrace::Algorithm a) {
  return a == ConvergenceTrace::Algorithm::projection ? "projection" : "regression";
}

ConvergenceTrace run_convergence(const DesignMatrix& a, const Vector& rhs,
                                 const ConvergenceRequest& request) {
  if (request.max_q == 0) {
    throw DomainError("run_convergence: max_q must be at least 1");
  }
  const SvdFactors oracle = svd_small(a);
  const MatrixStats stats = compute_stats(a, request.lambda);

  if (request.algorithm == ConvergenceTrace::Algorithm::projection) {
    Vector y = rhs;
    if (static_cast<std::size_t>(rhs.size()) != a.cols()) {
      if (static_cast<std::size_t>(rhs.size()) != a.rows()) {
        throw DimensionError("run_convergence right-hand side", a.cols(),
                             static_cast<std::size_t>(rhs.size()));
      }
      y = a.multiply_transpose(rhs);
    }
    ProjectionConfig cfg;
    cfg.lambda = request.lambda;
    cfg.gamma = request.gamma;
    cfg.eps = request.eps;
    cfg.q_override = request.max_q;
    return pc_proj_trace(a, cfg, y, stats, &oracle).second;
  }

  PcrConfig cfg;
  cfg.lambda = request.lambda;
  cfg.gamma = request.gamma;
  cfg.eps = request.eps;
  cfg.q_pcr = request.max_q;
  return pc_regress_trace(a, cfg, rhs, stats, oracle).second;
}

ConvergenceTrace run_convergence(const SyntheticProblem& problem,
                                 ConvergenceTrace::Algorithm algorithm, double eps,
                                 std::size_t max_q) {
  ConvergenceRequest request;
  request.algorithm = algorithm;
  request.lambda = problem.lambda;
  request.gamma = guaranteed_gap(problem.gamma);
  request.eps = eps;
  request.max_q = max_q;
  ConvergenceTrace trace = run_convergence(problem.a, problem.b, request);
  trace.seed = problem.seed;
  return trace;
}

LogLinearFit fit_log_error(const ConvergenceTrace& trace, std::size_t burn_in) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  std::size_t n = 0;
  for (const auto& r : trace.records) {
    if (r.iteration < burn_in || !(r.rel_error > 0.0)) {
      continue;
    }
    const auto x = static_cast<double>(r.iteration);
    const double y = std::log10(r.rel_error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    ++n;
  }
  LogLinearFit fit;
  fit.points = n;
  if (n < 2) {
    return fit;
  }
  const auto nd = static_cast<double>(n);
  const double cxx = sxx - sx * sx / nd;
  const double cxy = sxy - sx * sy / nd;
  const double cyy = syy - sy * sy / nd;
  fit.slope = cxy / cxx;
  fit.intercept = (sy - fit.slope * sx) / nd;
  fit.r_squared = cyy > 0.0 ? (cxy * cxy) / (cxx * cyy) : 1.0;
  return fit;
}

}  // namespace ridgepcr
