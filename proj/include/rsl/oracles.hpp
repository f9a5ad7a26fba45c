#pragma once

#include <utility>
#include <vector>

#include "rsl/dense_solution.hpp"
#include "rsl/problem.hpp"

namespace rsl {

/// Theta for q = 0 in closed form, keeping gamma2/delta2 in the derivative
/// transfer. Finite at lambda = 0. The caller is responsible for q being zero.
double exact_theta_qzero(const ValidatedProblem& problem, double lambda);

struct PicardConfig {
  /// Uniform grid points per subinterval.
  int grid = 4096;
  /// Stop early once the sup-norm change falls below this, relative to the
  /// size of the iterate.
  double tolerance = 1e-15;
};

struct PicardResult {
  DenseSolution omega1;
  DenseSolution omega2;
  int iterations_left = 0;
  int iterations_right = 0;
  /// Sup-norm changes of successive iterates, left then right.
  std::vector<double> deltas_left;
  std::vector<double> deltas_right;
};

/// Successive approximation of the integral equations for omega_1 and omega_2
/// on a fixed grid: cumulative Simpson (3/8 rule for odd counts) for the
/// convolution, cubic interpolation of the previous iterate at tau - Delay(tau).
/// Iteration 0 is the trigonometric part. Performs at most `iterations` sweeps
/// per region. Throws NonConvergence if the change has not contracted below the
/// first sweep's change by the 8th sweep, and DomainError for lambda = 0.
PicardResult picard_solution(const ValidatedProblem& problem, double lambda, int iterations,
                             const PicardConfig& cfg = {});

struct ClassicalComparison {
  int n = 0;
  double toolkit = 0.0;    // lambda_n from compute_spectrum
  double classical = 0.0;  // lambda_n from the plain shooting solver
  double difference() const { return toolkit - classical; }
};

struct ClassicalReport {
  std::vector<ClassicalComparison> rows;
  double max_difference() const;
};

/// For Delta = 0, p1 = p2 = 1, gamma_i = delta_i the problem is a classical Robin
/// Sturm-Liouville problem. Compares the toolkit's first n_max eigenvalues with
/// a separate non-delay shooting solver. Throws PreconditionViolated otherwise.
ClassicalReport classical_reduction_check(const ValidatedProblem& problem, int n_max = 10);

/// The shooting solver on its own: y'' + (lambda^2 + q) y = 0 through [0, pi],
/// returning y'(pi) + d y(pi).
double classical_shooting_theta(const ValidatedProblem& problem, double lambda, int steps);

}  // namespace rsl
