#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ridgepcr {

struct TraceRecord {
  std::size_t iteration = 0;
  double rel_error = 0.0;

  bool operator==(const TraceRecord&) const = default;
};

/// Per-iteration relative errors of one run; iterations start at 0 and
/// strictly increase.
struct ConvergenceTrace {
  enum class Algorithm { projection, regression };

  Algorithm algorithm = Algorithm::projection;
  std::vector<TraceRecord> records;
  double gamma = 0.0;
  double lambda = 0.0;
  double eps = 0.0;
  std::uint64_t seed = 0;
};

std::string to_string(ConvergenceTrace::Algorithm a);

}  // namespace ridgepcr
