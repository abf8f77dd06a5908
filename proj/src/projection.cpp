#include "ridgepcr/projection.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ridgepcr/errors.hpp"
#include "ridgepcr/ridge.hpp"
#include "ridgepcr/step_engine.hpp"

namespace ridgepcr {

namespace {

void validate(const ProjectionConfig& cfg) {
  if (!(cfg.lambda > 0.0)) {
    throw DomainError("pc_proj: lambda must be positive");
  }
  if (!(cfg.gamma > 0.0 && cfg.gamma < 1.0)) {
    throw DomainError("pc_proj: gamma must lie in (0, 1)");
  }
  if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) {
    throw DomainError("pc_proj: eps must lie in (0, 1)");
  }
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) {
    throw DomainError("pc_proj: delta must lie in (0, 1)");
  }
  if (cfg.c1 && !(*cfg.c1 > 0.0)) {
    throw DomainError("pc_proj: c1 must be positive");
  }
  if (!(cfg.c2 > 0.0)) {
    throw DomainError("pc_proj: c2 must be positive");
  }
  if (cfg.q_override && *cfg.q_override == 0) {
    throw DomainError("pc_proj: q must be at least 1");
  }
  if (cfg.eps_inner_override && !(*cfg.eps_inner_override > 0.0 && *cfg.eps_inner_override < 1.0)) {
    throw DomainError("pc_proj: inner eps must lie in (0, 1)");
  }
}

// B x = (A^T A + lambda I)^-1 A^T A x through ridge_apply_gram. `outer`
// names the iteration in propagated errors.
OperatorHandle smooth_projection_operator(const DesignMatrix& a, const RidgeParams& params,
                                          const MatrixStats& stats, const ProjectionPlan& plan,
                                          const std::size_t& outer) {
  OperatorHandle op;
  op.dimension = a.cols();
  op.err_bound = plan.operator_error;
  op.apply = [&a, params, &stats, &outer](const Vector& x) -> Vector {
    try {
      return ridge_apply_gram(a, params, x, stats);
    } catch (const ConvergenceError& e) {
      throw ConvergenceError("pc_proj outer iteration " + std::to_string(outer) + ": " +
                                 e.what(),
                             e.last_value());
    }
  };
  return op;
}

Vector run_projection(const DesignMatrix& a, const ProjectionConfig& cfg, const Vector& y,
                      const MatrixStats& stats, const StepObserver& observer) {
  const ProjectionPlan plan = plan_projection(cfg, stats);
  if (static_cast<std::size_t>(y.size()) != a.cols()) {
    throw DimensionError("pc_proj", a.cols(), static_cast<std::size_t>(y.size()));
  }
  if (y.isZero(0.0)) {
    if (observer) {
      for (std::size_t k = 0; k <= plan.q; ++k) {
        observer(k, y);
      }
    }
    return y;
  }
  RidgeParams params;
  params.lambda = cfg.lambda;
  params.eps = plan.eps_inner;
  params.delta = plan.delta_inner;
  params.max_iters = cfg.ridge_max_iters;

  std::size_t outer = 0;
  const OperatorHandle op = smooth_projection_operator(a, params, stats, plan, outer);
  return apply_step(op, y, plan.q, [&](std::size_t k, const Vector& s) {
    outer = k + 1;
    if (observer) {
      observer(k, s);
    }
  });
}

}  // namespace

ProjectionPlan plan_projection(const ProjectionConfig& cfg, const MatrixStats& stats) {
  validate(cfg);
  if (!(stats.sigma1_estimate > 0.0)) {
    throw DomainError("pc_proj: sigma_1 estimate must be positive");
  }
  ProjectionPlan plan;
  if (cfg.q_override) {
    plan.q = *cfg.q_override;
  } else if (cfg.c1) {
    plan.q = static_cast<std::size_t>(std::max(
        1.0, std::ceil(*cfg.c1 * std::log(1.0 / cfg.eps) / (cfg.gamma * cfg.gamma))));
  } else {
    plan.q = default_step_iterations(cfg.gamma, cfg.eps, cfg.strict_gap);
  }
  const double sqrt_kappa = std::sqrt(stats.kappa_lambda);
  plan.eps_inner = cfg.eps_inner_override.value_or(
      cfg.eps * cfg.eps * cfg.gamma * cfg.gamma / (cfg.c2 * sqrt_kappa));
  plan.eps_inner = std::min(plan.eps_inner, 0.5);
  plan.delta_inner = cfg.delta / (2.0 * static_cast<double>(plan.q));
  plan.operator_error = sqrt_kappa * plan.eps_inner;

  if (!cfg.q_override &&
      7.0 * static_cast<double>(plan.q) * plan.operator_error > cfg.eps) {
    throw BudgetError("pc_proj: 7 q eps' exceeds eps; increase c2 or lower q");
  }
  return plan;
}

Vector pc_proj(const DesignMatrix& a, const ProjectionConfig& cfg, const Vector& y,
               const MatrixStats& stats) {
  return run_projection(a, cfg, y, stats, {});
}

std::pair<Vector, ConvergenceTrace> pc_proj_trace(const DesignMatrix& a,
                                                  const ProjectionConfig& cfg, const Vector& y,
                                                  const MatrixStats& stats,
                                                  const SvdFactors* oracle) {
  ConvergenceTrace trace;
  trace.algorithm = ConvergenceTrace::Algorithm::projection;
  trace.gamma = cfg.gamma;
  trace.lambda = cfg.lambda;
  trace.eps = cfg.eps;

  std::vector<Vector> iterates;
  Vector reference;
  double ref_norm = 0.0;
  if (oracle != nullptr) {
    reference = exact_projection(*oracle, cfg.lambda, y);
    ref_norm = reference.norm();
  }
  const double scale_fallback = y.norm();
  auto relative = [&](const Vector& s, const Vector& ref, double norm) {
    const double denom = norm > 0.0 ? norm : (scale_fallback > 0.0 ? scale_fallback : 1.0);
    return (s - ref).norm() / denom;
  };

  Vector result = run_projection(a, cfg, y, stats, [&](std::size_t k, const Vector& s) {
    if (oracle != nullptr) {
      trace.records.push_back({k, relative(s, reference, ref_norm)});
    } else {
      iterates.push_back(s);
    }
  });

  if (oracle == nullptr) {
    const double final_norm = result.norm();
    for (std::size_t k = 0; k < iterates.size(); ++k) {
      trace.records.push_back({k, relative(iterates[k], result, final_norm)});
    }
  }
  return {std::move(result), std::move(trace)};
}

double admissible_gap(double lambda, double sigma_k_sq, double sigma_k1_sq) {
  const double upper = 1.0 - lambda / sigma_k_sq;
  const double lower = 1.0 - sigma_k1_sq / lambda;
  return std::max(0.0, std::min(upper, lower) / 4.0);
}

}  // namespace ridgepcr
