#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "ridgepcr/design_matrix.hpp"
#include "ridgepcr/trace.hpp"
#include "ridgepcr/types.hpp"

namespace ridgepcr::io {

// Matrix Market: "%%MatrixMarket matrix {coordinate|array} {real|integer}
// {general|symmetric}". Coordinate files load as CSR, array files as dense.
DesignMatrix read_matrix_market(std::istream& in, const std::string& source = "<stream>");
void write_matrix_market(std::ostream& out, const DesignMatrix& a);

// Plain CSV: one row per line, comma separated, no header.
DenseMatrix read_csv_matrix(std::istream& in, const std::string& source = "<stream>");
void write_csv_matrix(std::ostream& out, const DenseMatrix& m);

/// Vectors are stored one entry per line; a single comma-separated row is
/// accepted on input too.
Vector read_csv_vector(std::istream& in, const std::string& source = "<stream>");
void write_csv_vector(std::ostream& out, const Vector& v);

/// Header "iteration,rel_error" followed by one record per line.
ConvergenceTrace read_trace_csv(std::istream& in, const std::string& source = "<stream>");
void write_trace_csv(std::ostream& out, const ConvergenceTrace& trace);

/// Dispatches on extension: ".mtx" is Matrix Market, anything else CSV.
DesignMatrix load_matrix(const std::filesystem::path& path);
void save_matrix(const std::filesystem::path& path, const DesignMatrix& a);
Vector load_vector(const std::filesystem::path& path);
void save_vector(const std::filesystem::path& path, const Vector& v);
ConvergenceTrace load_trace(const std::filesystem::path& path);
void save_csv(const ConvergenceTrace& trace, const std::filesystem::path& path);

/// %.17g rendering used by every writer; round-trips exactly.
std::string format_double(double x);

}  // namespace ridgepcr::io
