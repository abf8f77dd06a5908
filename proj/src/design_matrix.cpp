#include "ridgepcr/design_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ridgepcr/errors.hpp"

namespace ridgepcr {

DesignMatrix DesignMatrix::from_dense(DenseMatrix values) {
  if (!values.allFinite()) {
    throw DomainError("design matrix contains non-finite entries");
  }
  const auto rows = static_cast<std::size_t>(values.rows());
  const auto cols = static_cast<std::size_t>(values.cols());
  return DesignMatrix(rows, cols, std::move(values));
}

DesignMatrix DesignMatrix::from_csr(std::size_t n_rows, std::size_t n_cols,
                                    std::span<const std::ptrdiff_t> row_offsets,
                                    std::span<const std::ptrdiff_t> col_indices,
                                    std::span<const double> values) {
  if (row_offsets.size() != n_rows + 1) {
    throw DimensionError("CSR row offsets", n_rows + 1, row_offsets.size());
  }
  if (col_indices.size() != values.size()) {
    throw DimensionError("CSR column indices vs values", values.size(), col_indices.size());
  }
  if (row_offsets.front() != 0 ||
      row_offsets.back() != static_cast<std::ptrdiff_t>(values.size())) {
    throw DomainError("CSR offsets must start at 0 and end at nnz");
  }
  for (std::size_t i = 0; i < n_rows; ++i) {
    const auto begin = row_offsets[i];
    const auto end = row_offsets[i + 1];
    if (end < begin) {
      throw DomainError("CSR offsets decrease at row " + std::to_string(i));
    }
    for (auto p = begin; p < end; ++p) {
      const auto c = col_indices[static_cast<std::size_t>(p)];
      if (c < 0 || static_cast<std::size_t>(c) >= n_cols) {
        throw DomainError("CSR column index " + std::to_string(c) + " out of range in row " +
                          std::to_string(i));
      }
      if (p > begin && c <= col_indices[static_cast<std::size_t>(p - 1)]) {
        throw DomainError("CSR column indices not strictly increasing in row " +
                          std::to_string(i));
      }
      if (!std::isfinite(values[static_cast<std::size_t>(p)])) {
        throw DomainError("design matrix contains non-finite entries");
      }
    }
  }

  SparseMatrix m(static_cast<std::ptrdiff_t>(n_rows), static_cast<std::ptrdiff_t>(n_cols));
  m.resizeNonZeros(static_cast<std::ptrdiff_t>(values.size()));
  std::copy(row_offsets.begin(), row_offsets.end(), m.outerIndexPtr());
  std::copy(col_indices.begin(), col_indices.end(), m.innerIndexPtr());
  std::copy(values.begin(), values.end(), m.valuePtr());
  return DesignMatrix(n_rows, n_cols, std::move(m));
}

std::size_t DesignMatrix::nnz() const noexcept {
  if (const auto* s = csr_values()) {
    return static_cast<std::size_t>(s->nonZeros());
  }
  return rows_ * cols_;
}

Vector DesignMatrix::multiply(const Vector& x) const {
  if (static_cast<std::size_t>(x.size()) != cols_) {
    throw DimensionError("matrix-vector product", cols_, static_cast<std::size_t>(x.size()));
  }
  return std::visit([&](const auto& m) -> Vector { return m * x; }, data_);
}

Vector DesignMatrix::multiply_transpose(const Vector& y) const {
  if (static_cast<std::size_t>(y.size()) != rows_) {
    throw DimensionError("transposed matrix-vector product", rows_,
                         static_cast<std::size_t>(y.size()));
  }
  return std::visit([&](const auto& m) -> Vector { return m.transpose() * y; }, data_);
}

double DesignMatrix::frobenius_norm() const {
  return std::visit([](const auto& m) { return m.norm(); }, data_);
}

DenseMatrix DesignMatrix::to_dense() const {
  if (const auto* d = dense_values()) {
    return *d;
  }
  return DenseMatrix(*csr_values());
}

}  // namespace ridgepcr
