#pragma once

#include <complex>
#include <string>

#include "rsl/problem.hpp"

namespace rsl {

/// A, B integrate over [0, x] with phase lambda*Delay/p1; C, D over [pi/2, x]
/// with phase lambda*Delay/p2. A and C use sine, B and D cosine.
enum class DelayIntegralKind { A, B, C, D };

/// Composite 16-point Gauss-Legendre with
///   panels = max(min_panels, ceil(|lambda| max(Delay) / (pi p)) * panels_per_half_wave)
/// multiplied by refinement.
struct QuadratureConfig {
  int min_panels = 8;
  int panels_per_half_wave = 4;
  int refinement = 1;
};

double delay_integral(const ValidatedProblem& problem, DelayIntegralKind kind, double x,
                      double lambda, const QuadratureConfig& quad = {});
std::complex<double> delay_integral(const ValidatedProblem& problem, DelayIntegralKind kind,
                                    double x, std::complex<double> lambda,
                                    const QuadratureConfig& quad = {});

/// A(pi/2), B(pi/2), C(pi), D(pi) at one lambda.
template <class T>
struct FullIntegrals {
  T a, b, c, d;
};

FullIntegrals<double> full_integrals(const ValidatedProblem& problem, double lambda,
                                     const QuadratureConfig& quad = {});
FullIntegrals<std::complex<double>> full_integrals(const ValidatedProblem& problem,
                                                   std::complex<double> lambda,
                                                   const QuadratureConfig& quad = {});

/// K = a1 p1/a2 + (p1+p2)/(2 p1 p2) (B(pi/2) + D(pi)) - d p2.
double k_factor(const ValidatedProblem& problem, double lambda, const QuadratureConfig& quad = {});
/// S = A(pi/2) + C(pi).
double s_factor(const ValidatedProblem& problem, double lambda, const QuadratureConfig& quad = {});

template <class T>
T k_from(const ValidatedProblem& problem, const FullIntegrals<T>& v) {
  const auto& s = problem.spec();
  return s.a1 * s.p1 / s.a2 + problem.coupling() * (v.b + v.d) - s.d * s.p2;
}

template <class T>
T s_from(const FullIntegrals<T>& v) {
  return v.a + v.c;
}

/// Normalisation of the last correction term of the eigenvalue expansion.
enum class ThirdTermConvention {
  AsPrinted,  // K^2 / (lambda0)^3
  PiSquared,  // K^2 / ((lambda0)^3 pi^2)
};

/// lambda_n^0 - K/(lambda_n^0 pi)
///   + (p1+p2)/(p1 p2) S K / ((lambda_n^0)^2 pi) - K^2/(lambda_n^0)^3,
/// all integrals at lambda_n^0.
double theorem1_eigenvalue(const ValidatedProblem& problem, int n,
                           ThirdTermConvention convention = ThirdTermConvention::AsPrinted,
                           const QuadratureConfig& quad = {});

/// The expansion truncated after the 1/n term: lambda_n^0 - K/(lambda_n^0 pi).
double first_order_eigenvalue(const ValidatedProblem& problem, int n,
                              const QuadratureConfig& quad = {});

/// order 1: 1/lambda_n^0 + K/((lambda_n^0)^3 pi);  order 2: 1/(lambda_n^0)^2.
double reciprocal_expansion(const ValidatedProblem& problem, int n, int order,
                            const QuadratureConfig& quad = {});

struct NodePrediction {
  double x;
  /// The delay-integral argument was outside its interval and was clamped.
  bool clamped = false;
};

/// Predicted j-th node on the left, 1 <= j <= floor(n/2).
NodePrediction nodal_formula_left(const ValidatedProblem& problem, int n, int j,
                                  const QuadratureConfig& quad = {});
/// Predicted j-th node on the right, floor(n/2)+1 <= j <= n. The second
/// coefficient a1 is used where the printed formula carries alpha1.
NodePrediction nodal_formula_right(const ValidatedProblem& problem, int n, int j,
                                   const QuadratureConfig& quad = {});

/// Whether an instance lies in the regime the closed-form expansions assume.
struct AsymptoticRegime {
  /// gamma1 delta2 == gamma2 delta1.
  bool interface_ratio_matched = false;
  /// pi (p1+p2)/(2 p1 p2) == pi, the phase normalisation the 1/pi factors assume.
  bool unit_phase_rate = false;

  bool gated() const { return interface_ratio_matched; }
  std::string label() const;
};

AsymptoticRegime asymptotic_regime(const ValidatedProblem& problem);

}  // namespace rsl
