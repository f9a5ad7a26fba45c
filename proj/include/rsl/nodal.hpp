#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rsl/asymptotics.hpp"
#include "rsl/integrator.hpp"
#include "rsl/problem.hpp"
#include "rsl/spectrum.hpp"

namespace rsl {

struct NodalConfig {
  IntegratorConfig integrator{.step_count = 2048, .interpolation_order = 5};
  /// Multiplies the integrator's step count for the eigenfunction solve.
  int step_multiplier = 4;
  int points_per_oscillation = 64;
  /// Bisection width on the dense interpolant.
  double tolerance = 1e-10;
  /// Re-solve with 4x the steps and record how far the nodes move.
  bool verify = false;
  QuadratureConfig quadrature{};
};

struct NumericNodes {
  std::vector<double> left;   // in (0, pi/2)
  std::vector<double> right;  // in (pi/2, pi)
  /// Largest node movement under the 4x re-solve; set when verify is on and
  /// the node counts agree.
  std::optional<double> verification_shift;

  std::vector<double> all() const;
  std::size_t size() const { return left.size() + right.size(); }
};

/// Zeros of omega(x, lambda) in (0, pi/2) and (pi/2, pi), endpoints and the
/// interface excluded, each refined by bisection on the dense solution.
NumericNodes numeric_nodes(const ValidatedProblem& problem, double lambda,
                           const NodalConfig& cfg = {});

struct NodalRow {
  Side side = Side::Left;
  double x_numeric = 0.0;
  /// Formula index and prediction; empty when no prediction lies within half
  /// the local node gap.
  std::optional<int> j;
  std::optional<double> x_formula;
  std::optional<double> abs_error;
  /// The prediction's delay-integral argument was clamped.
  bool clamped = false;
};

struct NodalTable {
  int n = 0;
  double lambda = 0.0;
  std::vector<NodalRow> rows;
  /// Predictions that no numeric node claimed: (j, x).
  std::vector<std::pair<int, double>> unmatched_predictions;
  /// Numeric left-node count differs from floor(n/2).
  bool split_mismatch = false;
  std::string regime;

  /// Largest abs_error over matched rows (0 if none).
  double max_abs_error() const;
  std::size_t matched() const;
};

/// Numeric nodes of the n-th eigenfunction against the closed-form predictions.
/// Requires n >= 4 so that both index ranges are nonempty.
NodalTable compare_nodes(const ValidatedProblem& problem, int n, const Spectrum& spectrum,
                         const NodalConfig& cfg = {});
NodalTable compare_nodes(const ValidatedProblem& problem, const SpectrumEntry& entry,
                         const NodalConfig& cfg = {});

}  // namespace rsl
