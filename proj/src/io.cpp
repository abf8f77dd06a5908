#include "ridgepcr/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>
#include <vector>

#include "ridgepcr/errors.hpp"

namespace ridgepcr::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_double(std::string_view token, const std::string& source, std::size_t line) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') {
    token.remove_prefix(1);
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
    throw ParseError(source, line, "cannot parse number '" + std::string(token) + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError(source, line, "non-finite value");
  }
  return value;
}

std::size_t parse_count(std::string_view token, const std::string& source, std::size_t line) {
  token = trim(token);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
    throw ParseError(source, line, "cannot parse integer '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start));
    if (pos == std::string_view::npos) {
      break;
    }
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) {
      ++j;
    }
    if (j > i) {
      out.push_back(s.substr(i, j - i));
    }
    i = j;
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Non-empty CSV rows with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::vector<double>>> read_csv_rows(std::istream& in,
                                                                       const std::string& source) {
  std::vector<std::pair<std::size_t, std::vector<double>>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty()) {
      continue;
    }
    std::vector<double> values;
    for (auto field : split(t, ',')) {
      values.push_back(parse_double(field, source, line_no));
    }
    rows.emplace_back(line_no, std::move(values));
  }
  if (rows.empty()) {
    throw ParseError(source, std::max<std::size_t>(line_no, 1), "empty CSV input");
  }
  return rows;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open " + path.string());
  }
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write " + path.string());
  }
  return out;
}

bool is_matrix_market(const std::filesystem::path& path) {
  return lower(path.extension().string()) == ".mtx";
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf, static_cast<std::size_t>(len));
}

DesignMatrix read_matrix_market(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) {
    throw ParseError(source, 1, "empty Matrix Market input");
  }
  ++line_no;
  const auto header = split_ws(line);
  if (header.size() != 5 || lower(header[0]) != "%%matrixmarket" || lower(header[1]) != "matrix") {
    throw ParseError(source, line_no, "expected '%%MatrixMarket matrix <format> <field> <symmetry>'");
  }
  const std::string format = lower(header[2]);
  const std::string field = lower(header[3]);
  const std::string symmetry = lower(header[4]);
  if (format != "coordinate" && format != "array") {
    throw ParseError(source, line_no, "unsupported format '" + format + "'");
  }
  if (field != "real" && field != "integer" && field != "double") {
    throw ParseError(source, line_no, "unsupported field '" + field + "'");
  }
  if (symmetry != "general" && symmetry != "symmetric") {
    throw ParseError(source, line_no, "unsupported symmetry '" + symmetry + "'");
  }
  const bool symmetric = symmetry == "symmetric";

  auto next_data_line = [&](std::vector<std::string_view>& tokens) {
    while (std::getline(in, line)) {
      ++line_no;
      const auto t = trim(line);
      if (t.empty() || t.front() == '%') {
        continue;
      }
      tokens = split_ws(line);
      return true;
    }
    return false;
  };

  std::vector<std::string_view> tokens;
  if (!next_data_line(tokens)) {
    throw ParseError(source, line_no + 1, "missing size line");
  }
  const std::size_t expected_size_tokens = format == "coordinate" ? 3 : 2;
  if (tokens.size() != expected_size_tokens) {
    throw ParseError(source, line_no, "malformed size line");
  }
  const std::size_t rows = parse_count(tokens[0], source, line_no);
  const std::size_t cols = parse_count(tokens[1], source, line_no);
  if (symmetric && rows != cols) {
    throw ParseError(source, line_no, "symmetric matrix must be square");
  }

  if (format == "array") {
    DenseMatrix m = DenseMatrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t j = 0; j < cols; ++j) {
      for (std::size_t i = symmetric ? j : 0; i < rows; ++i) {
        if (!next_data_line(tokens)) {
          throw ParseError(source, line_no + 1, "too few array entries");
        }
        if (tokens.size() != 1) {
          throw ParseError(source, line_no, "expected one value per line");
        }
        const double v = parse_double(tokens[0], source, line_no);
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
        if (symmetric) {
          m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
        }
      }
    }
    if (next_data_line(tokens)) {
      throw ParseError(source, line_no, "too many array entries");
    }
    return DesignMatrix::from_dense(std::move(m));
  }

  const std::size_t declared = parse_count(tokens[2], source, line_no);
  struct Entry {
    std::size_t row, col;
    double value;
    std::size_t line;
  };
  std::vector<Entry> entries;
  entries.reserve(symmetric ? 2 * declared : declared);
  for (std::size_t e = 0; e < declared; ++e) {
    if (!next_data_line(tokens)) {
      throw ParseError(source, line_no + 1, "expected " + std::to_string(declared) +
                                                " entries, found " + std::to_string(e));
    }
    if (tokens.size() != 3) {
      throw ParseError(source, line_no, "expected 'row col value'");
    }
    const std::size_t r = parse_count(tokens[0], source, line_no);
    const std::size_t c = parse_count(tokens[1], source, line_no);
    if (r == 0 || c == 0 || r > rows || c > cols) {
      throw ParseError(source, line_no, "entry index out of range");
    }
    const double v = parse_double(tokens[2], source, line_no);
    entries.push_back({r - 1, c - 1, v, line_no});
    if (symmetric && r != c) {
      entries.push_back({c - 1, r - 1, v, line_no});
    }
  }
  if (next_data_line(tokens)) {
    throw ParseError(source, line_no, "more entries than declared");
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    return std::tie(x.row, x.col) < std::tie(y.row, y.col);
  });

  std::vector<std::ptrdiff_t> offsets(rows + 1, 0);
  std::vector<std::ptrdiff_t> indices;
  std::vector<double> values;
  indices.reserve(entries.size());
  values.reserve(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (k > 0 && entries[k].row == entries[k - 1].row && entries[k].col == entries[k - 1].col) {
      throw ParseError(source, entries[k].line, "duplicate entry");
    }
    ++offsets[entries[k].row + 1];
    indices.push_back(static_cast<std::ptrdiff_t>(entries[k].col));
    values.push_back(entries[k].value);
  }
  for (std::size_t i = 0; i < rows; ++i) {
    offsets[i + 1] += offsets[i];
  }
  return DesignMatrix::from_csr(rows, cols, offsets, indices, values);
}

void write_matrix_market(std::ostream& out, const DesignMatrix& a) {
  if (const auto* s = a.csr_values()) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << a.rows() << ' ' << a.cols() << ' ' << s->nonZeros() << '\n';
    for (std::ptrdiff_t i = 0; i < s->outerSize(); ++i) {
      for (SparseMatrix::InnerIterator it(*s, i); it; ++it) {
        out << (i + 1) << ' ' << (it.col() + 1) << ' ' << format_double(it.value()) << '\n';
      }
    }
    return;
  }
  const DenseMatrix& m = *a.dense_values();
  out << "%%MatrixMarket matrix array real general\n";
  out << a.rows() << ' ' << a.cols() << '\n';
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      out << format_double(m(i, j)) << '\n';
    }
  }
}

DenseMatrix read_csv_matrix(std::istream& in, const std::string& source) {
  const auto rows = read_csv_rows(in, source);
  const std::size_t cols = rows.front().second.size();
  DenseMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& [line, values] = rows[i];
    if (values.size() != cols) {
      throw ParseError(source, line,
                       "expected " + std::to_string(cols) + " columns, found " +
                           std::to_string(values.size()));
    }
    for (std::size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values[j];
    }
  }
  return m;
}

void write_csv_matrix(std::ostream& out, const DenseMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) {
        out << ',';
      }
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

Vector read_csv_vector(std::istream& in, const std::string& source) {
  const auto rows = read_csv_rows(in, source);
  if (rows.size() == 1) {
    const auto& values = rows.front().second;
    return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
  }
  Vector v(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& [line, values] = rows[i];
    if (values.size() != 1) {
      throw ParseError(source, line, "expected a single value per line");
    }
    v[static_cast<Eigen::Index>(i)] = values.front();
  }
  return v;
}

void write_csv_vector(std::ostream& out, const Vector& v) {
  for (const double x : v) {
    out << format_double(x) << '\n';
  }
}

ConvergenceTrace read_trace_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) {
    throw ParseError(source, 1, "empty trace file");
  }
  ++line_no;
  if (trim(line) != "iteration,rel_error") {
    throw ParseError(source, line_no, "expected header 'iteration,rel_error'");
  }
  ConvergenceTrace trace;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty()) {
      continue;
    }
    const auto fields = split(t, ',');
    if (fields.size() != 2) {
      throw ParseError(source, line_no, "expected 'iteration,rel_error'");
    }
    TraceRecord r{parse_count(fields[0], source, line_no), parse_double(fields[1], source, line_no)};
    if (!trace.records.empty() && r.iteration <= trace.records.back().iteration) {
      throw ParseError(source, line_no, "iterations must strictly increase");
    }
    trace.records.push_back(r);
  }
  return trace;
}

void write_trace_csv(std::ostream& out, const ConvergenceTrace& trace) {
  out << "iteration,rel_error\n";
  for (const auto& r : trace.records) {
    out << r.iteration << ',' << format_double(r.rel_error) << '\n';
  }
}

DesignMatrix load_matrix(const std::filesystem::path& path) {
  auto in = open_in(path);
  if (is_matrix_market(path)) {
    return read_matrix_market(in, path.string());
  }
  return DesignMatrix::from_dense(read_csv_matrix(in, path.string()));
}

void save_matrix(const std::filesystem::path& path, const DesignMatrix& a) {
  auto out = open_out(path);
  if (is_matrix_market(path)) {
    write_matrix_market(out, a);
  } else {
    write_csv_matrix(out, a.to_dense());
  }
}

Vector load_vector(const std::filesystem::path& path) {
  auto in = open_in(path);
  if (is_matrix_market(path)) {
    const DesignMatrix m = read_matrix_market(in, path.string());
    if (m.cols() != 1) {
      throw DimensionError("vector file " + path.string() + " columns", 1, m.cols());
    }
    return m.to_dense().col(0);
  }
  return read_csv_vector(in, path.string());
}

void save_vector(const std::filesystem::path& path, const Vector& v) {
  auto out = open_out(path);
  write_csv_vector(out, v);
}

ConvergenceTrace load_trace(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_trace_csv(in, path.string());
}

void save_csv(const ConvergenceTrace& trace, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_trace_csv(out, trace);
}

}  // namespace ridgepcr::io
