#include <cmath>
#include <vector>

#include "doctest.h"
#include "ridgepcr/errors.hpp"
#include "ridgepcr/matrix_core.hpp"
#include "test_support.hpp"

using namespace ridgepcr;
using testing::diag_matrix;
using testing::vec;

namespace {

DesignMatrix to_csr(const DenseMatrix& m) {
  std::vector<std::ptrdiff_t> offsets{0};
  std::vector<std::ptrdiff_t> cols;
  std::vector<double> vals;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0.0) {
        cols.push_back(j);
        vals.push_back(m(i, j));
      }
    }
    offsets.push_back(static_cast<std::ptrdiff_t>(cols.size()));
  }
  return DesignMatrix::from_csr(static_cast<std::size_t>(m.rows()),
                                static_cast<std::size_t>(m.cols()), offsets, cols, vals);
}

void check_svd_invariants(const DesignMatrix& a, const SvdFactors& f) {
  const auto r = static_cast<Eigen::Index>(f.rank());
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(r, r);
  CHECK((f.u.transpose() * f.u - eye).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((f.v.transpose() * f.v - eye).cwiseAbs().maxCoeff() <= 1e-10);
  for (Eigen::Index i = 0; i + 1 < r; ++i) {
    CHECK(f.singular_values(i) >= f.singular_values(i + 1));
  }
  CHECK(f.singular_values(r - 1) > 0.0);
  const Eigen::MatrixXd dense = a.to_dense();
  const Eigen::MatrixXd rec = f.u * f.singular_values.asDiagonal() * f.v.transpose();
  CHECK((rec - dense).norm() <= 1e-8 * dense.norm());
}

}  // namespace

TEST_CASE("gram_apply examples") {
  CHECK(gram_apply(diag_matrix({2, 3}), vec({1, 1})).isApprox(vec({4, 9})));
  CHECK(gram_apply(diag_matrix({2, 3}), vec({0, 0})).isZero(0.0));
  DenseMatrix m(2, 2);
  m << 1, 1, 0, 1;
  CHECK(gram_apply(DesignMatrix::from_dense(m), vec({1, 0})).isApprox(vec({1, 1})));
}

TEST_CASE("gram_apply reports both dimensions on mismatch") {
  try {
    gram_apply(diag_matrix({2, 3}), vec({1, 2, 3}));
    FAIL("expected DimensionError");
  } catch (const DimensionError& e) {
    CHECK(e.expected() == 2);
    CHECK(e.actual() == 3);
  }
}

TEST_CASE("gram_norm examples and inner-product invariant") {
  CHECK(gram_norm(diag_matrix({1, 1}), vec({3, 4})) == doctest::Approx(5.0));
  CHECK(gram_norm(diag_matrix({1, 1}), vec({0, 0})) == 0.0);
  CHECK(gram_norm(diag_matrix({2, 3}), vec({1, 1})) == doctest::Approx(std::sqrt(13.0)));

  const auto a = DesignMatrix::from_dense(testing::gaussian_matrix(40, 25, 3));
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Vector x = testing::gaussian_vector(25, 100 + s);
    const double lhs = gram_apply(a, x).dot(x);
    const double rhs = std::pow(gram_norm(a, x), 2);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * rhs);
  }
}

TEST_CASE("design matrix validation") {
  DenseMatrix bad(1, 1);
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(DesignMatrix::from_dense(bad), DomainError);

  const std::vector<std::ptrdiff_t> off{0, 2, 3};
  const std::vector<double> val{1, 2, 3};
  const std::vector<std::ptrdiff_t> unsorted{1, 0, 1};
  CHECK_THROWS_AS(DesignMatrix::from_csr(2, 2, off, unsorted, val), DomainError);
  const std::vector<std::ptrdiff_t> out_of_range{0, 2, 1};
  CHECK_THROWS_AS(DesignMatrix::from_csr(2, 2, off, out_of_range, val), DomainError);
  const std::vector<std::ptrdiff_t> decreasing{0, 2, 1, 3};
  const std::vector<std::ptrdiff_t> ok_cols{0, 1, 1};
  CHECK_THROWS_AS(DesignMatrix::from_csr(3, 2, decreasing, ok_cols, val), DomainError);
  CHECK_THROWS_AS(DesignMatrix::from_csr(3, 2, off, ok_cols, val), DimensionError);

  const auto a = DesignMatrix::from_csr(2, 2, off, ok_cols, val);
  CHECK(a.storage() == DesignMatrix::Storage::csr);
  CHECK(a.nnz() == 3);
}

TEST_CASE("CSR and dense products agree") {
  DenseMatrix m = testing::gaussian_matrix(60, 45, 11);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if ((i * 7 + j * 3) % 5 != 0) {
        m(i, j) = 0.0;
      }
    }
  }
  const auto dense = DesignMatrix::from_dense(m);
  const auto csr = to_csr(m);
  const Vector x = testing::gaussian_vector(45, 12);
  const Vector y = testing::gaussian_vector(60, 13);
  CHECK((dense.multiply(x) - csr.multiply(x)).norm() <= 1e-12 * dense.multiply(x).norm());
  CHECK((dense.multiply_transpose(y) - csr.multiply_transpose(y)).norm() <=
        1e-12 * dense.multiply_transpose(y).norm());
  CHECK((gram_apply(dense, x) - gram_apply(csr, x)).norm() <= 1e-12 * gram_apply(dense, x).norm());
}

TEST_CASE("svd_small examples") {
  const auto a = diag_matrix({3, 1});
  const SvdFactors f = svd_small(a);
  REQUIRE(f.rank() == 2);
  CHECK(f.singular_values(0) == doctest::Approx(3.0));
  CHECK(f.singular_values(1) == doctest::Approx(1.0));
  CHECK(f.u.cwiseAbs().isApprox(Eigen::MatrixXd::Identity(2, 2)));
  CHECK(f.v.cwiseAbs().isApprox(Eigen::MatrixXd::Identity(2, 2)));
  check_svd_invariants(a, f);

  const auto eye = DesignMatrix::from_dense(DenseMatrix::Identity(5, 5));
  const SvdFactors fi = svd_small(eye);
  REQUIRE(fi.rank() == 5);
  CHECK((fi.singular_values.array() - 1.0).abs().maxCoeff() <= 1e-14);

  const auto r = DesignMatrix::from_dense(testing::gaussian_matrix(50, 30, 5));
  check_svd_invariants(r, svd_small(r));
}

TEST_CASE("svd_small on wide, sparse and rank-deficient input") {
  const auto wide = DesignMatrix::from_dense(testing::gaussian_matrix(20, 35, 6));
  const SvdFactors fw = svd_small(wide);
  CHECK(fw.rank() == 20);
  check_svd_invariants(wide, fw);

  const DenseMatrix low = testing::with_spectrum(30, 20, {5.0, 2.0, 0.5}, 8);
  const auto a = DesignMatrix::from_dense(low);
  const SvdFactors fl = svd_small(a);
  CHECK(fl.rank() == 3);
  CHECK(fl.singular_values.isApprox(vec({5.0, 2.0, 0.5}), 1e-12));
  check_svd_invariants(a, fl);

  const SvdFactors fc = svd_small(to_csr(low));
  CHECK(fc.singular_values.isApprox(fl.singular_values, 1e-12));

  // Agreement with Eigen's own SVD.
  const DenseMatrix g = testing::gaussian_matrix(40, 25, 9);
  const Eigen::MatrixXd gm = g;
  Eigen::JacobiSVD<Eigen::MatrixXd> ref(gm);
  CHECK(svd_small(DesignMatrix::from_dense(g)).singular_values.isApprox(ref.singularValues(),
                                                                        1e-12));
}

TEST_CASE("svd_small rejects a zero matrix") {
  CHECK_THROWS_WITH_AS(svd_small(DesignMatrix::from_dense(DenseMatrix::Zero(3, 2))),
                       "rank zero", DomainError);
}

TEST_CASE("kept_rank counts sigma^2 >= lambda") {
  const SvdFactors f = svd_small(diag_matrix({2, 1, 0.5}));
  CHECK(f.kept_rank(0.1) == 3);
  CHECK(f.kept_rank(1.0) == 2);
  CHECK(f.kept_rank(4.0) == 1);
  CHECK(f.kept_rank(4.5) == 0);
}

TEST_CASE("exact_projection examples") {
  const SvdFactors f = svd_small(diag_matrix({2, 0.5}));
  CHECK(exact_projection(f, 1.0, vec({3, 4})).isApprox(vec({3, 0})));
  CHECK(exact_projection(f, 5.0, vec({3, 4})).isZero(0.0));
  CHECK(exact_projection(f, 0.1, vec({3, 4})).isApprox(vec({3, 4})));
  CHECK_THROWS_AS(exact_projection(f, 0.0, vec({3, 4})), DomainError);
  CHECK_THROWS_AS(exact_projection(f, 1.0, vec({3})), DimensionError);
}

TEST_CASE("exact_projection is idempotent and orthogonal") {
  const auto a = DesignMatrix::from_dense(testing::gaussian_matrix(50, 30, 21));
  const SvdFactors f = svd_small(a);
  const double lambda = std::pow(f.singular_values(10), 2);
  const std::size_t k = f.kept_rank(lambda);
  const Eigen::MatrixXd vk = f.v.leftCols(static_cast<Eigen::Index>(k));
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Vector y = testing::gaussian_vector(30, 200 + s);
    const Vector p = exact_projection(f, lambda, y);
    CHECK((exact_projection(f, lambda, p) - p).norm() <= 1e-10 * y.norm());
    CHECK((vk.transpose() * (p - y)).cwiseAbs().maxCoeff() <= 1e-9 * y.norm());
  }
}

TEST_CASE("exact_pcr examples") {
  const SvdFactors f = svd_small(diag_matrix({2, 0.5}));
  CHECK(exact_pcr(f, 1.0, vec({4, 1})).isApprox(vec({2, 0})));
  CHECK(exact_pcr(f, 5.0, vec({4, 1})).isZero(0.0));
  CHECK(exact_pcr(f, 1.0, vec({0, 7})).isZero(0.0));
  CHECK_THROWS_AS(exact_pcr(f, 1.0, vec({4})), DimensionError);
}

TEST_CASE("exact_pcr minimizes the residual against A_lambda") {
  const DenseMatrix m = testing::gaussian_matrix(15, 8, 31);
  const SvdFactors f = svd_small(DesignMatrix::from_dense(m));
  const double lambda = std::pow(f.singular_values(3), 2);
  const auto k = static_cast<Eigen::Index>(f.kept_rank(lambda));
  const Eigen::MatrixXd vk = f.v.leftCols(k);
  const Eigen::MatrixXd a_lambda = Eigen::MatrixXd(m) * vk * vk.transpose();
  const Vector b = testing::gaussian_vector(15, 32);
  const Vector x = exact_pcr(f, lambda, b);
  const double best = (a_lambda * x - b).norm();
  for (double e : {1e-3, -1e-3, 1e-1}) {
    for (Eigen::Index i = 0; i < 8; ++i) {
      Vector xe = x;
      xe(i) += e;
      CHECK((a_lambda * xe - b).norm() >= best - 1e-9);
    }
  }
}

TEST_CASE("spectral_norm_estimate examples") {
  const double s = spectral_norm_estimate(diag_matrix({3, 1}), 1e-6, 1000, 1);
  CHECK(std::abs(s - 3.0) <= 3e-6);
  const auto eye = DesignMatrix::from_dense(DenseMatrix::Identity(4, 4));
  CHECK(spectral_norm_estimate(eye, 1e-6, 1000, 1) == doctest::Approx(1.0));

  const auto r = DesignMatrix::from_dense(testing::gaussian_matrix(100, 60, 17));
  const double sigma1 = svd_small(r).singular_values(0);
  for (double tol : {1e-2, 1e-3, 1e-6}) {
    const double est = spectral_norm_estimate(r, tol, 100000, 4);
    CHECK(est >= (1.0 - tol) * sigma1);
    CHECK(est <= (1.0 + tol) * sigma1);
  }
  CHECK(spectral_norm_estimate(r, 1e-3, 100000, 4) == spectral_norm_estimate(r, 1e-3, 100000, 4));
}

TEST_CASE("spectral_norm_estimate errors") {
  CHECK_THROWS_AS(spectral_norm_estimate(diag_matrix({3, 1}), 0.0, 10, 1), DomainError);
  CHECK_THROWS_AS(spectral_norm_estimate(diag_matrix({0, 0}), 1e-3, 10, 1), DomainError);
  const auto r = DesignMatrix::from_dense(testing::with_spectrum(30, 20, {1.0, 0.999, 0.5}, 3));
  try {
    spectral_norm_estimate(r, 1e-12, 2, 1);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.last_value() > 0.0);
  }
}

TEST_CASE("compute_stats") {
  const auto r = DesignMatrix::from_dense(testing::gaussian_matrix(80, 40, 2));
  const double sigma1 = svd_small(r).singular_values(0);
  const MatrixStats st = compute_stats(r, 2.0);
  CHECK(st.sigma1_estimate >= sigma1 * (1.0 - 1e-6));
  CHECK(st.sigma1_estimate <= sigma1 * (1.0 + 2.1e-3));
  CHECK(st.kappa_lambda == st.sigma1_estimate * st.sigma1_estimate / 2.0);
  CHECK(st.stable_rank >= 1.0);
  CHECK_THROWS_AS(compute_stats(r, 0.0), DomainError);
}
