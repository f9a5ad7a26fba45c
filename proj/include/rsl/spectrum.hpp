#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "rsl/integrator.hpp"
#include "rsl/problem.hpp"

namespace rsl {

/// Theta is evaluated at step counts N, 2N, ..., 2^(levels-1) N and combined
/// by repeated Richardson extrapolation (RK4 error terms h^4, h^5, h^6, ...).
/// levels = 1 is the plain integrator value.
struct ThetaConfig {
  IntegratorConfig integrator{};
  int richardson_levels = 4;

  void validate() const;
};

struct RootConfig {
  /// Initial bracket radius as a fraction of the seed gap.
  double bracket_fraction = 0.45;
  double expansion = 1.5;
  int max_expansions = 3;
  /// Subintervals scanned when the bracket ends share a sign.
  int scan_points = 8;
  int bisection_steps = 8;
  int max_iterations = 60;
  /// Final bracket width relative to max(1, lambda).
  double relative_width = 1e-11;
  /// Secant stops once a step is below this, relative to max(1, lambda).
  double step_tolerance = 4e-16;
};

struct NearZeroConfig {
  bool enabled = true;
  /// Samples of lambda^2 on each of [-(reach lambda_1^0)^2, 0] and
  /// [0, (lambda_1^0/2)^2].
  int samples = 64;
  /// How far up the imaginary axis to look, in units of lambda_1^0.
  double imaginary_reach = 3.0;
};

struct SpectrumConfig {
  ThetaConfig theta{};
  RootConfig root{};
  NearZeroConfig near_zero{};
};

/// lambda_n^0 = 2 p1 p2 n / (p1 + p2).
double lambda0(const ValidatedProblem& problem, int n);

/// -(gamma1 a2 lambda / (delta1 p2)) sin(lambda pi (p1+p2) / (2 p1 p2)).
double theta0(const ValidatedProblem& problem, double lambda);

/// Theta as a function of lambda^2. Keeps the coefficient tables for each step
/// count it has used, so repeated calls during a root search skip resampling.
/// Not thread safe; use one evaluator per thread.
class ThetaEvaluator {
 public:
  ThetaEvaluator(ValidatedProblem problem, ThetaConfig cfg = {});

  double operator()(double lambda_sq);
  double at_lambda(double lambda) { return (*this)(lambda * lambda); }

  /// Single-grid value with `steps_left`/`steps_right` steps.
  double raw(double lambda_sq, int steps_left, int steps_right);

  const ValidatedProblem& problem() const { return problem_; }
  const ThetaConfig& config() const { return cfg_; }
  long evaluations() const { return evaluations_; }

 private:
  const RegionSamples& samples(Side side, int steps);

  ValidatedProblem problem_;
  ThetaConfig cfg_;
  std::map<std::pair<int, int>, std::unique_ptr<RegionSamples>> cache_;
  long evaluations_ = 0;
};

/// Theta(lambda) = omega_2'(pi) + d omega_2(pi) from the integrator.
double theta(const ValidatedProblem& problem, double lambda, const ThetaConfig& cfg = {});

struct SpectrumEntry {
  int n = 0;
  double seed = 0.0;
  double root = 0.0;
  double residual = 0.0;
  double lo = 0.0, hi = 0.0;
  /// Theta at lo and hi; opposite signs.
  double theta_lo = 0.0, theta_hi = 0.0;
  int evaluations = 0;
};

/// A root of Theta not attached to any seed: real with |lambda| < lambda_1^0 / 2,
/// or purely imaginary (lambda_sq < 0) within the configured reach.
struct NearZeroRoot {
  double lambda_sq = 0.0;
  double lo = 0.0, hi = 0.0;  // bracket in lambda^2
  bool imaginary() const { return lambda_sq < 0.0; }
  /// |lambda|.
  double magnitude() const;
};

struct Spectrum {
  std::vector<SpectrumEntry> entries;
  std::vector<NearZeroRoot> near_zero_roots;

  /// Throws IndexOutOfRange for n outside 1..entries.size().
  const SpectrumEntry& at(int n) const;
  std::vector<double> roots() const;
};

/// Root near lambda_n^0. Throws BracketNotFound with the scanned interval and
/// the Theta samples when no sign change is found.
SpectrumEntry find_eigenvalue(const ValidatedProblem& problem, int n,
                              const SpectrumConfig& cfg = {});
SpectrumEntry find_eigenvalue(ThetaEvaluator& theta, int n, const RootConfig& cfg = {});

/// Sign changes of Theta in lambda^2 over the near-zero window.
std::vector<NearZeroRoot> near_zero_roots(const ValidatedProblem& problem,
                                          const SpectrumConfig& cfg = {});

/// Entries 1..n_max, searched in parallel (OpenMP) and merged by index. Every
/// index is attempted; if any fail, one BracketNotFound lists them all.
Spectrum compute_spectrum(const ValidatedProblem& problem, int n_max,
                          const SpectrumConfig& cfg = {});

/// Same result computed on the calling thread only.
Spectrum compute_spectrum_serial(const ValidatedProblem& problem, int n_max,
                                 const SpectrumConfig& cfg = {});

}  // namespace rsl
