#pragma once

#include <cstdint>
#include <vector>

#include "rsl/dense_solution.hpp"
#include "rsl/problem.hpp"

namespace rsl {

/// Method-of-steps settings: classical fixed-step RK4 with Hermite history.
struct IntegratorConfig {
  /// Steps per subinterval while |lambda|/p <= scaling_threshold.
  int step_count = 2048;
  /// Corrector passes for steps whose delayed arguments land inside the step.
  int corrector_iterations = 2;
  /// 3 (cubic Hermite) or 5 (quintic Hermite).
  int interpolation_order = 3;
  double scaling_threshold = 64.0;

  void validate() const;
};

/// Steps used on a subinterval with coefficient p. Above the threshold the count
/// grows in proportion to |lambda|/p, rounded up to a multiple of step_count/16
/// so that nearby lambda share a grid.
int effective_steps(const IntegratorConfig& cfg, double lambda_sq, double p);

/// q and the delayed argument x - Delay(x) sampled at the half-step points of a
/// uniform grid on one region. Depends only on the problem and the step count,
/// so one table serves every lambda.
class RegionSamples {
 public:
  RegionSamples(const ValidatedProblem& problem, Side side, int steps);

  Side side() const { return side_; }
  int steps() const { return steps_; }
  double start() const { return start_; }
  double end() const { return end_; }

  double q(int half_index) const { return q_[half_index]; }
  double delayed(int half_index) const { return s_[half_index]; }
  bool undelayed(int half_index) const { return undelayed_[half_index] != 0; }

 private:
  Side side_;
  int steps_;
  double start_, end_;
  std::vector<double> q_;
  std::vector<double> s_;
  std::vector<std::uint8_t> undelayed_;
};

/// Integrates one region from `initial` at its left end with lambda^2 given
/// explicitly. `samples`, when provided, must match side and steps.
DenseSolution integrate_region(const ValidatedProblem& problem, Side side, double lambda_sq,
                               DenseValue initial, int steps, const IntegratorConfig& cfg,
                               const RegionSamples* samples = nullptr);

/// Initial data of omega_1: (a2, -a1).
DenseValue left_initial_data(const ValidatedProblem& problem);

/// Initial data of omega_2 from omega_1's values at pi/2:
/// (gamma1/delta1 * y, gamma2/delta2 * y').
DenseValue interface_transfer(const ValidatedProblem& problem, DenseValue left_end);

/// omega_1 on [0, pi/2].
DenseSolution integrate_omega1(const ValidatedProblem& problem, double lambda,
                               const IntegratorConfig& cfg = {});

/// omega_2 on [pi/2, pi]; throws MismatchedLambda if omega1 was computed for a
/// different lambda^2.
DenseSolution integrate_omega2(const ValidatedProblem& problem, double lambda,
                               const DenseSolution& omega1, const IntegratorConfig& cfg = {});

}  // namespace rsl
