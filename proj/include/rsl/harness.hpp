#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "rsl/config.hpp"

namespace rsl {

/// Least-squares slope of log(error) against log(n). Throws DegenerateInput for
/// fewer than three points, a non-positive error or n, or all n equal.
double convergence_slope(const std::vector<std::pair<double, double>>& points);

/// 17 significant digits, '.' decimal point.
std::string csv_number(double v);

struct RunOptions {
  /// Refuse to run asymptotic comparisons outside the gated regime.
  bool strict = false;
};

struct RunResult {
  std::string summary_json;
  std::vector<std::filesystem::path> files;
  /// Every check in the summary passed (true when there are none).
  bool all_passed = true;
  /// One line per check, "PASS name: detail" or "FAIL name: detail".
  std::vector<std::string> check_lines;
};

/// Runs the configured experiment and writes its reports under cfg.output.
/// All computation finishes before any file is written. Module errors are
/// rethrown with the experiment named in the message; with options.strict an
/// instance outside the gated regime raises PreconditionViolated.
RunResult run_experiment(const ExperimentConfig& cfg, const RunOptions& options = {});

}  // namespace rsl
