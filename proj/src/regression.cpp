#include "ridgepcr/regression.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ridgepcr/errors.hpp"
#include "ridgepcr/projection.hpp"
#include "ridgepcr/ridge.hpp"

namespace ridgepcr {

namespace {

void validate(const PcrConfig& cfg) {
  if (!(cfg.lambda > 0.0)) {
    throw DomainError("pc_regress: lambda must be positive");
  }
  if (!(cfg.gamma > 0.0 && cfg.gamma < 1.0)) {
    throw DomainError("pc_regress: gamma must lie in (0, 1)");
  }
  if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) {
    throw DomainError("pc_regress: eps must lie in (0, 1)");
  }
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) {
    throw DomainError("pc_regress: delta must lie in (0, 1)");
  }
  if (!(cfg.c1 > 0.0 && cfg.c2 > 0.0)) {
    throw DomainError("pc_regress: c1 and c2 must be positive");
  }
  if (cfg.q_pcr && *cfg.q_pcr == 0) {
    throw DomainError("pc_regress: q must be at least 1");
  }
}

template <typename F>
auto staged(const std::string& stage, F&& f) {
  try {
    return f();
  } catch (const ConvergenceError& e) {
    throw ConvergenceError("pc_regress " + stage + ": " + e.what(), e.last_value());
  }
}

Vector run_regression(const DesignMatrix& a, const PcrConfig& cfg, const Vector& b,
                      const MatrixStats& stats, const StepObserver& observer) {
  const PcrPlan plan = plan_regression(cfg, stats);
  if (static_cast<std::size_t>(b.size()) != a.rows()) {
    throw DimensionError("pc_regress", a.rows(), static_cast<std::size_t>(b.size()));
  }

  ProjectionConfig proj;
  proj.lambda = cfg.lambda;
  proj.gamma = cfg.gamma;
  proj.eps = plan.eps_inner;
  proj.delta = cfg.delta / 2.0;
  proj.ridge_max_iters = cfg.ridge_max_iters;
  const Vector s0 =
      staged("projection", [&] { return pc_proj(a, proj, a.multiply_transpose(b), stats); });

  RidgeParams params;
  params.lambda = cfg.lambda;
  params.eps = plan.eps_inner;
  params.delta = plan.delta_inner;
  params.max_iters = cfg.ridge_max_iters;

  std::size_t step = 0;
  OperatorHandle ridge_op;
  ridge_op.dimension = a.cols();
  ridge_op.err_bound = plan.eps_inner / cfg.lambda;
  ridge_op.apply = [&](const Vector& x) {
    return staged("series step " + std::to_string(step),
                  [&] { return ridge_solve(a, params, x, stats); });
  };
  return truncated_g_series(plan.q + 1, cfg.lambda, ridge_op, s0,
                            [&](std::size_t k, const Vector& s) {
                              step = k + 1;
                              if (observer) {
                                observer(k, s);
                              }
                            });
}

}  // namespace

PcrPlan plan_regression(const PcrConfig& cfg, const MatrixStats& stats) {
  validate(cfg);
  if (!(stats.kappa_lambda > 0.0)) {
    throw DomainError("pc_regress: kappa_lambda must be positive");
  }
  PcrPlan plan;
  plan.q = cfg.q_pcr.value_or(static_cast<std::size_t>(
      std::max(1.0, std::ceil(cfg.c1 * std::log(stats.kappa_lambda / cfg.eps)))));
  const auto qd = static_cast<double>(plan.q);
  plan.eps_inner =
      cfg.eps_inner.value_or(cfg.eps / (cfg.c2 * qd * qd * std::sqrt(stats.kappa_lambda)));
  if (!(plan.eps_inner > 0.0 && plan.eps_inner < cfg.eps)) {
    throw DomainError("pc_regress: inner eps must lie in (0, eps)");
  }
  plan.delta_inner = cfg.delta / (2.0 * (qd + 1.0));
  return plan;
}

Vector truncated_g_series(std::size_t q, double lambda, const OperatorHandle& ridge_op,
                          const Vector& y0, const StepObserver& observer) {
  if (q == 0) {
    throw DomainError("truncated_g_series: q must be at least 1");
  }
  if (static_cast<std::size_t>(y0.size()) != ridge_op.dimension) {
    throw DimensionError("truncated_g_series", ridge_op.dimension,
                         static_cast<std::size_t>(y0.size()));
  }
  const Vector s1 = ridge_op.apply(y0);
  Vector s = s1;
  if (observer) {
    observer(0, s);
  }
  for (std::size_t i = 1; i < q; ++i) {
    s = s1 + lambda * ridge_op.apply(s);
    if (observer) {
      observer(i, s);
    }
  }
  return s;
}

Vector pc_regress(const DesignMatrix& a, const PcrConfig& cfg, const Vector& b,
                  const MatrixStats& stats) {
  return run_regression(a, cfg, b, stats, {});
}

std::pair<Vector, ConvergenceTrace> pc_regress_trace(const DesignMatrix& a, const PcrConfig& cfg,
                                                     const Vector& b, const MatrixStats& stats,
                                                     const SvdFactors& oracle) {
  ConvergenceTrace trace;
  trace.algorithm = ConvergenceTrace::Algorithm::regression;
  trace.gamma = cfg.gamma;
  trace.lambda = cfg.lambda;
  trace.eps = cfg.eps;

  const Vector reference = exact_pcr(oracle, cfg.lambda, b);
  const double ref_sq = a.multiply(reference).squaredNorm();
  const double denom = ref_sq > 0.0 ? ref_sq : std::max(b.squaredNorm(), 1.0);
  Vector result = run_regression(a, cfg, b, stats, [&](std::size_t k, const Vector& s) {
    trace.records.push_back({k, a.multiply(s - reference).squaredNorm() / denom});
  });
  return {std::move(result), std::move(trace)};
}

RegressionError regression_error(const DesignMatrix& a, const Vector& s, const Vector& reference) {
  const Vector diff = s - reference;
  return {gram_norm(a, diff), diff.norm()};
}

}  // namespace ridgepcr
