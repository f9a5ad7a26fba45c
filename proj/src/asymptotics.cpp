#include "rsl/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rsl/errors.hpp"
#include "rsl/quadrature.hpp"
#include "rsl/spectrum.hpp"

namespace rsl {

namespace {

struct KindInfo {
  Side side;
  double lo;
  double hi;
  bool sine;
};

KindInfo info(DelayIntegralKind kind) {
  switch (kind) {
    case DelayIntegralKind::A: return {Side::Left, 0.0, kInterface, true};
    case DelayIntegralKind::B: return {Side::Left, 0.0, kInterface, false};
    case DelayIntegralKind::C: return {Side::Right, kInterface, kPi, true};
    case DelayIntegralKind::D: return {Side::Right, kInterface, kPi, false};
  }
  return {Side::Left, 0.0, kInterface, true};
}

double max_delay(const ValidatedProblem& problem, const KindInfo& k) {
  constexpr int kSamples = 257;
  double best = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double x = k.lo + (k.hi - k.lo) * i / (kSamples - 1.0);
    best = std::max(best, problem.delay(x, k.side));
  }
  return best;
}

int panel_count(const ValidatedProblem& problem, const KindInfo& k, double abs_lambda,
                const QuadratureConfig& quad) {
  const double waves = abs_lambda * max_delay(problem, k) / (kPi * problem.p(k.side));
  const int scaled = static_cast<int>(std::ceil(waves)) * quad.panels_per_half_wave;
  return std::max(quad.min_panels, scaled) * std::max(1, quad.refinement);
}

template <class T>
T integral(const ValidatedProblem& problem, DelayIntegralKind kind, double x, T lambda,
           const QuadratureConfig& quad) {
  const KindInfo k = info(kind);
  if (!(x >= k.lo && x <= k.hi)) {
    std::ostringstream os;
    os << "x = " << x << " outside [" << k.lo << ", " << k.hi << "] for this integral";
    throw DomainError(os.str());
  }
  const double p = problem.p(k.side);
  const auto integrand = [&](double t) -> T {
    const T phase = lambda * (problem.delay(t, k.side) / p);
    using std::cos;
    using std::sin;
    return problem.q(t, k.side) * (k.sine ? sin(phase) : cos(phase));
  };
  return integrate_panels(integrand, k.lo, x, panel_count(problem, k, std::abs(lambda), quad));
}

template <class T>
FullIntegrals<T> full(const ValidatedProblem& problem, T lambda, const QuadratureConfig& quad) {
  return {integral(problem, DelayIntegralKind::A, kInterface, lambda, quad),
          integral(problem, DelayIntegralKind::B, kInterface, lambda, quad),
          integral(problem, DelayIntegralKind::C, kPi, lambda, quad),
          integral(problem, DelayIntegralKind::D, kPi, lambda, quad)};
}

double seed_for(const ValidatedProblem& problem, int n) {
  if (n < 1) throw IndexOutOfRange("eigenvalue index must be at least 1");
  return lambda0(problem, n);
}

}  // namespace

double delay_integral(const ValidatedProblem& problem, DelayIntegralKind kind, double x,
                      double lambda, const QuadratureConfig& quad) {
  return integral(problem, kind, x, lambda, quad);
}

std::complex<double> delay_integral(const ValidatedProblem& problem, DelayIntegralKind kind,
                                    double x, std::complex<double> lambda,
                                    const QuadratureConfig& quad) {
  return integral(problem, kind, x, lambda, quad);
}

FullIntegrals<double> full_integrals(const ValidatedProblem& problem, double lambda,
                                     const QuadratureConfig& quad) {
  return full(problem, lambda, quad);
}

FullIntegrals<std::complex<double>> full_integrals(const ValidatedProblem& problem,
                                                   std::complex<double> lambda,
                                                   const QuadratureConfig& quad) {
  return full(problem, lambda, quad);
}

double k_factor(const ValidatedProblem& problem, double lambda, const QuadratureConfig& quad) {
  return k_from(problem, full_integrals(problem, lambda, quad));
}

double s_factor(const ValidatedProblem& problem, double lambda, const QuadratureConfig& quad) {
  return s_from(full_integrals(problem, lambda, quad));
}

double theorem1_eigenvalue(const ValidatedProblem& problem, int n,
                           ThirdTermConvention convention, const QuadratureConfig& quad) {
  const double seed = seed_for(problem, n);
  const auto v = full_integrals(problem, seed, quad);
  const double k = k_from(problem, v);
  const double s = s_from(v);
  const auto& spec = problem.spec();
  const double first = seed - k / (seed * kPi);
  const double second =
      (spec.p1 + spec.p2) / (spec.p1 * spec.p2) * s * k / (seed * seed * kPi);
  double third = k * k / (seed * seed * seed);
  if (convention == ThirdTermConvention::PiSquared) third /= kPi * kPi;
  return first + second - third;
}

double first_order_eigenvalue(const ValidatedProblem& problem, int n,
                              const QuadratureConfig& quad) {
  const double seed = seed_for(problem, n);
  return seed - k_factor(problem, seed, quad) / (seed * kPi);
}

double reciprocal_expansion(const ValidatedProblem& problem, int n, int order,
                            const QuadratureConfig& quad) {
  const double seed = seed_for(problem, n);
  if (order == 1) return 1.0 / seed + k_factor(problem, seed, quad) / (seed * seed * seed * kPi);
  if (order == 2) return 1.0 / (seed * seed);
  throw ConfigError("reciprocal expansion order must be 1 or 2");
}

NodePrediction nodal_formula_left(const ValidatedProblem& problem, int n, int j,
                                  const QuadratureConfig& quad) {
  if (n < 1 || j < 1 || j > n / 2) {
    std::ostringstream os;
    os << "left nodal index j = " << j << " outside [1, " << n / 2 << "] for n = " << n;
    throw IndexOutOfRange(os.str());
  }
  const auto& s = problem.spec();
  const double seed = lambda0(problem, n);
  const double k = k_factor(problem, seed, quad);
  const double jh = j - 0.5;
  const double lead = jh * kPi * s.p1 / seed;
  const double arg = std::clamp(lead, 0.0, kInterface);
  const double b = delay_integral(problem, DelayIntegralKind::B, arg, seed, quad);
  const double seed2 = seed * seed;
  const double x = lead - jh * s.p1 * k / (seed2 * seed) - s.a1 * s.p1 * s.p1 / (s.a2 * seed2) -
                   b / (2.0 * seed2);
  return {x, arg != lead};
}

NodePrediction nodal_formula_right(const ValidatedProblem& problem, int n, int j,
                                   const QuadratureConfig& quad) {
  if (n < 1 || j <= n / 2 || j > n) {
    std::ostringstream os;
    os << "right nodal index j = " << j << " outside [" << n / 2 + 1 << ", " << n
       << "] for n = " << n;
    throw IndexOutOfRange(os.str());
  }
  const auto& s = problem.spec();
  const double seed = lambda0(problem, n);
  const auto v = full_integrals(problem, seed, quad);
  const double k = k_from(problem, v);
  const double jh = j - 0.5;
  const double scaled = jh * kPi * s.p2 / seed;
  const double arg = std::clamp(scaled, kInterface, kPi);
  const double d = delay_integral(problem, DelayIntegralKind::D, arg, seed, quad);
  const double seed2 = seed * seed;
  const double x = -kPi * (s.p2 - s.p1) / (2.0 * s.p1) + scaled -
                   jh * s.p2 * k / (seed2 * seed) - s.a1 * s.p1 * s.p2 / (s.a2 * seed2) -
                   (s.p1 + s.p2) * (v.b + d) / (2.0 * seed2 * s.p1);
  return {x, arg != scaled};
}

std::string AsymptoticRegime::label() const {
  std::string text = interface_ratio_matched
                         ? "inside asymptotic regime"
                         : "outside asymptotic regime (gamma1*delta2 != gamma2*delta1)";
  if (!unit_phase_rate) text += "; phase rate differs from pi";
  return text;
}

AsymptoticRegime asymptotic_regime(const ValidatedProblem& problem) {
  const auto& s = problem.spec();
  const double lhs = s.gamma1 * s.delta2;
  const double rhs = s.gamma2 * s.delta1;
  AsymptoticRegime regime;
  regime.interface_ratio_matched =
      std::abs(lhs - rhs) <= 1e-12 * std::max(std::abs(lhs), std::abs(rhs));
  regime.unit_phase_rate = std::abs(problem.coupling() - 1.0) <= 1e-12;
  return regime;
}

}  // namespace rsl
