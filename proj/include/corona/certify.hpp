#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "corona/graph.hpp"

namespace corona {

/// Outcome of one acceptance criterion. `passed` requires both the numerical
/// check and `seconds <= limit_seconds`.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;
};

struct CertifyOptions {
  std::uint64_t seed = 0;
  std::size_t crossing_cap = kDefaultCrossingCap;
};

inline constexpr int kCriterionCount = 10;

/// Runs criterion `id` (1..10). Errors raised by the engines are caught and
/// reported as a failure with the error text in `detail`.
CriterionResult run_criterion(int id, const CertifyOptions& options = {});

/// All criteria in order.
std::vector<CriterionResult> run_acceptance(const CertifyOptions& options = {});

/// "PASS [3] crossing-count bound (0.021 s / 1 s): ..." style line.
std::string format_result(const CriterionResult& r);

}  // namespace corona
