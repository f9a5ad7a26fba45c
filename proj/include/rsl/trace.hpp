#pragma once

#include <vector>

#include "rsl/asymptotics.hpp"
#include "rsl/problem.hpp"
#include "rsl/spectrum.hpp"

namespace rsl {

struct RegularizedTerm {
  int n = 0;
  double value = 0.0;
};

/// lambda_n^2 - (lambda_n^0)^2 + (2/pi) K - (p1+p2)/(p1 p2) K S / (lambda_n^0 pi),
/// K and S at lambda_n^0. Even in the seed, so a negative index gives the same value.
RegularizedTerm trace_term(const ValidatedProblem& problem, const SpectrumEntry& entry,
                           const QuadratureConfig& quad = {});
double trace_term_value(const ValidatedProblem& problem, double lambda, double seed,
                        const QuadratureConfig& quad = {});

enum class ResidueMethod { Series, Contour };

struct ContourConfig {
  /// Radius as a fraction of lambda_1^0.
  double radius_fraction = 0.1;
  int points = 256;
};

/// Residue at 0 of (p1+p2)/(p1 p2) K(lambda) S(lambda) cot(mu lambda) / lambda,
/// mu = pi (p1+p2)/(2 p1 p2). Series: (2/pi) K(0) s1 with
/// s1 = (1/p1) int_0^{pi/2} q Delta + (1/p2) int_{pi/2}^pi q Delta.
/// Contour: trapezoid rule on |lambda| = r; throws ContourTooLarge when r
/// exceeds half the distance to the nearest nonzero pole of the cotangent.
double residue_R(const ValidatedProblem& problem, ResidueMethod method,
                 const ContourConfig& contour = {}, const QuadratureConfig& quad = {});

/// -(2/pi) K(0) + R - K(0)^2 + (p1+p2)^2/(4 p1^2 p2^2) S(0)^2.
double trace_rhs(const ValidatedProblem& problem, const QuadratureConfig& quad = {});

/// Each near-zero root sigma = lambda^2 stands for the pair +-lambda, so it
/// contributes 2 sigma.
double near_zero_contribution(const Spectrum& spectrum);

/// near-zero contribution + 2 sum_{n=1}^{N} trace_term(n). Throws
/// IncompleteSpectrum when the spectrum stops before N.
double trace_partial_sum(const ValidatedProblem& problem, const Spectrum& spectrum, int N,
                         const QuadratureConfig& quad = {});

struct TraceReport {
  std::vector<std::pair<int, double>> partial_sums;
  double rhs = 0.0;
  double residue = 0.0;
  double near_zero_contribution = 0.0;
  /// No root in the near-zero window; its contribution was taken as 0.
  bool near_zero_missing = false;
  /// 2 S_N - S_{N/2} from the two largest N when they differ by a factor 2,
  /// otherwise the last partial sum.
  double converged_estimate = 0.0;
};

TraceReport trace_report(const ValidatedProblem& problem, const Spectrum& spectrum,
                         const std::vector<int>& sizes, const QuadratureConfig& quad = {});

}  // namespace rsl
