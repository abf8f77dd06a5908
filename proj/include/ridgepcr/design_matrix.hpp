#pragma once

#include <cstddef>
#include <span>
#include <variant>

#include <Eigen/SparseCore>

#include "ridgepcr/types.hpp"

namespace ridgepcr {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, std::ptrdiff_t>;

/// Data matrix with rows as samples. Stored either dense (row-major) or as
/// compressed sparse rows; products dispatch on the storage tag.
///
/// Entries are always finite. CSR input must have non-decreasing offsets and
/// strictly increasing in-range column indices within each row.
class DesignMatrix {
 public:
  enum class Storage { dense, csr };

  static DesignMatrix from_dense(DenseMatrix values);
  static DesignMatrix from_csr(std::size_t n_rows, std::size_t n_cols,
                               std::span<const std::ptrdiff_t> row_offsets,
                               std::span<const std::ptrdiff_t> col_indices,
                               std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Storage storage() const noexcept {
    return std::holds_alternative<DenseMatrix>(data_) ? Storage::dense : Storage::csr;
  }
  /// Stored entries; for dense storage this is rows * cols.
  std::size_t nnz() const noexcept;

  /// A x, with x of length cols().
  Vector multiply(const Vector& x) const;
  /// A^T y, with y of length rows().
  Vector multiply_transpose(const Vector& y) const;

  double frobenius_norm() const;
  DenseMatrix to_dense() const;

  const DenseMatrix* dense_values() const noexcept { return std::get_if<DenseMatrix>(&data_); }
  const SparseMatrix* csr_values() const noexcept { return std::get_if<SparseMatrix>(&data_); }

 private:
  DesignMatrix(std::size_t rows, std::size_t cols, std::variant<DenseMatrix, SparseMatrix> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {}

  std::size_t rows_;
  std::size_t cols_;
  std::variant<DenseMatrix, SparseMatrix> data_;
};

}  // namespace ridgepcr
