#include <cmath>
#include <optional>

#include "doctest.h"
#include "ridgepcr/convergence.hpp"
#include "ridgepcr/errors.hpp"
#include "ridgepcr/matrix_core.hpp"
#include "ridgepcr/ridge.hpp"
#include "ridgepcr/synthetic.hpp"
#include "test_support.hpp"

using namespace ridgepcr;

namespace {

std::optional<std::size_t> first_below(const ConvergenceTrace& t, double level) {
  for (const auto& r : t.records) {
    if (r.rel_error <= level) {
      return r.iteration;
    }
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("gen_synthetic respects the gap") {
  const auto p = gen_synthetic(120, 80, 10, 0.1, 1);
  REQUIRE(p.singular_values.size() == 80);
  for (double s : p.singular_values) {
    const double s2 = s * s;
    CHECK((s2 <= 0.45 || s2 >= 0.55));
    CHECK(s2 <= 1.0);
  }
  CHECK(p.lambda == 0.5);
  CHECK(p.top_rank == 10);
  CHECK(p.a.rows() == 120);
  CHECK(p.a.cols() == 80);
}

TEST_CASE("gen_synthetic is deterministic") {
  const auto p = gen_synthetic(50, 30, 5, 0.2, 42);
  const auto q = gen_synthetic(50, 30, 5, 0.2, 42);
  CHECK(p.a.to_dense() == q.a.to_dense());
  CHECK(p.b == q.b);
  CHECK(p.x_true == q.x_true);
  CHECK(p.singular_values == q.singular_values);
  const auto r = gen_synthetic(50, 30, 5, 0.2, 43);
  CHECK(p.b != r.b);
}

TEST_CASE("gen_synthetic round-trips its spectrum and response") {
  const auto p = gen_synthetic(120, 80, 10, 0.05, 7);
  const auto f = svd_small(p.a);
  REQUIRE(f.rank() == p.singular_values.size());
  CHECK((f.singular_values - p.singular_values).cwiseAbs().maxCoeff() <= 1e-8);

  // x_true lies in the top right singular subspace.
  const Eigen::MatrixXd vk = f.v.leftCols(10);
  CHECK((vk * (vk.transpose() * p.x_true) - p.x_true).norm() <= 1e-10 * p.x_true.norm());
  const Vector ax = p.a.multiply(p.x_true);
  CHECK((p.b - ax).norm() == doctest::Approx(0.1 * ax.norm()).epsilon(1e-10));
}

TEST_CASE("gen_synthetic spectrum law over 1000 draws") {
  const double gamma = 0.1;
  double top_min = 2.0, top_max = 0.0, tail_min = 2.0, tail_max = -1.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto p = gen_synthetic(12, 8, 3, gamma, seed);
    for (Eigen::Index i = 0; i < p.singular_values.size(); ++i) {
      const double s2 = p.singular_values(i) * p.singular_values(i);
      if (i < 3) {
        top_min = std::min(top_min, s2);
        top_max = std::max(top_max, s2);
      } else {
        tail_min = std::min(tail_min, s2);
        tail_max = std::max(tail_max, s2);
      }
    }
  }
  CHECK(top_min >= 0.5 * (1.0 + gamma));
  CHECK(top_max <= 1.0);
  CHECK(tail_min >= 0.0);
  CHECK(tail_max <= 0.5 * (1.0 - gamma));
  // The ranges are actually filled.
  CHECK(top_min <= 0.5 * (1.0 + gamma) + 0.01);
  CHECK(top_max >= 0.99);
  CHECK(tail_max >= 0.5 * (1.0 - gamma) - 0.01);
}

TEST_CASE("gen_synthetic validates its shape") {
  CHECK_THROWS_AS(gen_synthetic(10, 8, 8, 0.1, 1), DomainError);
  CHECK_THROWS_AS(gen_synthetic(10, 8, 0, 0.1, 1), DomainError);
  CHECK_THROWS_AS(gen_synthetic(10, 8, 2, 0.0, 1), DomainError);
  CHECK_THROWS_AS(gen_synthetic(10, 8, 2, 1.0, 1), DomainError);
  CHECK_NOTHROW(gen_synthetic(5, 8, 2, 0.5, 1));
}

TEST_CASE("RNG streams are independent and reproducible") {
  auto a = make_stream(9, RngStream::left);
  auto b = make_stream(9, RngStream::left);
  auto c = make_stream(9, RngStream::right);
  const auto va = a();
  CHECK(va == b());
  CHECK(va != c());
}

TEST_CASE("guaranteed_gap") {
  CHECK(guaranteed_gap(0.1) == doctest::Approx(0.1 / 4.4));
  CHECK(guaranteed_gap(0.2) < 0.2 / 4.0);
}

TEST_CASE("run_convergence traces") {
  const auto p = gen_synthetic(120, 80, 10, 0.2, 3);
  const auto proj = run_convergence(p, ConvergenceTrace::Algorithm::projection, 1e-4, 300);
  REQUIRE(proj.records.size() == 301);
  CHECK(proj.seed == 3);
  CHECK(proj.gamma == guaranteed_gap(0.2));
  for (std::size_t k = 0; k < proj.records.size(); ++k) {
    CHECK(proj.records[k].iteration == k);
    if (k > 3) {
      CHECK(proj.records[k].rel_error <= proj.records[k - 1].rel_error);
    }
  }
  const auto fit = fit_log_error(proj, 3);
  CHECK(fit.slope < 0.0);
  CHECK(fit.r_squared >= 0.9);

  // Iteration 0 is the ridge-only iterate B y.
  const auto oracle = svd_small(p.a);
  const Vector y = p.a.multiply_transpose(p.b);
  const auto eig = testing::gram_eigen(p.a);
  const Vector by = testing::gram_function(eig, [&](double s) { return s / (s + p.lambda); }, y);
  const Vector py = exact_projection(oracle, p.lambda, y);
  CHECK(proj.records[0].rel_error == doctest::Approx((by - py).norm() / py.norm()).epsilon(1e-6));

  const auto reg = run_convergence(p, ConvergenceTrace::Algorithm::regression, 1e-3, 12);
  REQUIRE(reg.records.size() == 13);
  CHECK(reg.algorithm == ConvergenceTrace::Algorithm::regression);
  for (std::size_t k = 4; k < reg.records.size(); ++k) {
    CHECK(reg.records[k].rel_error <= reg.records[k - 1].rel_error);
  }
  CHECK(fit_log_error(reg, 3).r_squared >= 0.9);
}

TEST_CASE("run_convergence with explicit inputs") {
  const auto p = gen_synthetic(60, 40, 5, 0.2, 4);
  ConvergenceRequest req;
  req.lambda = p.lambda;
  req.gamma = guaranteed_gap(p.gamma);
  req.max_q = 50;
  const Vector y = p.a.multiply_transpose(p.b);
  const auto from_y = run_convergence(p.a, y, req);
  const auto from_b = run_convergence(p.a, p.b, req);
  CHECK(from_y.records == from_b.records);
  CHECK_THROWS_AS(run_convergence(p.a, Vector::Ones(3), req), DimensionError);
  req.max_q = 0;
  CHECK_THROWS_AS(run_convergence(p.a, y, req), DomainError);
}

TEST_CASE("regression is less gap-sensitive than projection") {
  const auto p = gen_synthetic(120, 80, 10, 0.05, 11);
  const auto reg = run_convergence(p, ConvergenceTrace::Algorithm::regression, 1e-3, 16);
  const auto proj = run_convergence(p, ConvergenceTrace::Algorithm::projection, 1e-3, 12000);
  const auto r = first_below(reg, 1e-3);
  const auto q = first_below(proj, 1e-3);
  REQUIRE(r.has_value());
  REQUIRE(q.has_value());
  CHECK(*r < *q);
}

TEST_CASE("fit_log_error") {
  ConvergenceTrace t;
  for (std::size_t k = 0; k < 20; ++k) {
    t.records.push_back({k, std::pow(10.0, 1.0 - 0.5 * static_cast<double>(k))});
  }
  const auto fit = fit_log_error(t, 3);
  CHECK(fit.points == 17);
  CHECK(fit.slope == doctest::Approx(-0.5));
  CHECK(fit.intercept == doctest::Approx(1.0));
  CHECK(fit.r_squared == doctest::Approx(1.0));
  t.records.push_back({20, 0.0});
  CHECK(fit_log_error(t, 3).points == 17);
}
