#include "rsl/trace.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "rsl/errors.hpp"
#include "rsl/quadrature.hpp"

namespace rsl {

namespace {

double delay_moment(const ValidatedProblem& problem, Side side) {
  const double lo = side == Side::Left ? 0.0 : kInterface;
  const double hi = side == Side::Left ? kInterface : kPi;
  const auto f = [&](double t) { return problem.q(t, side) * problem.delay(t, side); };
  return integrate_panels(f, lo, hi, 32) / problem.p(side);
}

}  // namespace

double trace_term_value(const ValidatedProblem& problem, double lambda, double seed,
                        const QuadratureConfig& quad) {
  const auto v = full_integrals(problem, seed, quad);
  const double k = k_from(problem, v);
  const double s = s_from(v);
  return lambda * lambda - seed * seed + 2.0 / kPi * k -
         2.0 * problem.coupling() * k * s / (seed * kPi);
}

RegularizedTerm trace_term(const ValidatedProblem& problem, const SpectrumEntry& entry,
                           const QuadratureConfig& quad) {
  return {entry.n, trace_term_value(problem, entry.root, entry.seed, quad)};
}

double residue_R(const ValidatedProblem& problem, ResidueMethod method,
                 const ContourConfig& contour, const QuadratureConfig& quad) {
  const double k0 = k_factor(problem, 0.0, quad);
  if (method == ResidueMethod::Series) {
    const double s1 = delay_moment(problem, Side::Left) + delay_moment(problem, Side::Right);
    return 2.0 / kPi * k0 * s1;
  }
  const double first_pole = lambda0(problem, 1);
  const double r = contour.radius_fraction * first_pole;
  if (!(r > 0.0) || r > 0.5 * first_pole) {
    std::ostringstream os;
    os << "contour radius " << r << " exceeds half the distance " << first_pole
       << " to the nearest cotangent pole";
    throw ContourTooLarge(os.str());
  }
  if (contour.points < 8) throw ConfigError("contour needs at least 8 points");
  using C = std::complex<double>;
  const double mu = problem.phase_rate();
  const double weight = 2.0 * problem.coupling();
  C sum = 0.0;
  for (int k = 0; k < contour.points; ++k) {
    const double angle = 2.0 * kPi * (k + 0.5) / contour.points;
    const C lambda = std::polar(r, angle);
    const auto v = full_integrals(problem, lambda, quad);
    const C integrand =
        weight * k_from(problem, v) * s_from(v) * (std::cos(mu * lambda) / std::sin(mu * lambda)) /
        lambda;
    // d lambda = i lambda d angle; the i cancels the one in 1/(2 pi i).
    sum += integrand * lambda;
  }
  return (sum / static_cast<double>(contour.points)).real();
}

double trace_rhs(const ValidatedProblem& problem, const QuadratureConfig& quad) {
  const auto v = full_integrals(problem, 0.0, quad);
  const double k0 = k_from(problem, v);
  const double s0 = s_from(v);
  const double c = problem.coupling();
  return -2.0 / kPi * k0 + residue_R(problem, ResidueMethod::Series, {}, quad) - k0 * k0 +
         c * c * s0 * s0;
}

double near_zero_contribution(const Spectrum& spectrum) {
  double total = 0.0;
  for (const auto& root : spectrum.near_zero_roots) total += 2.0 * root.lambda_sq;
  return total;
}

double trace_partial_sum(const ValidatedProblem& problem, const Spectrum& spectrum, int N,
                         const QuadratureConfig& quad) {
  if (N < 1 || N > static_cast<int>(spectrum.entries.size())) {
    std::ostringstream os;
    os << "partial sum to N = " << N << " needs that many eigenvalues; spectrum has "
       << spectrum.entries.size();
    throw IncompleteSpectrum(os.str());
  }
  double sum = 0.0;
  for (int n = 1; n <= N; ++n) sum += trace_term(problem, spectrum.at(n), quad).value;
  return near_zero_contribution(spectrum) + 2.0 * sum;
}

TraceReport trace_report(const ValidatedProblem& problem, const Spectrum& spectrum,
                         const std::vector<int>& sizes, const QuadratureConfig& quad) {
  TraceReport report;
  report.rhs = trace_rhs(problem, quad);
  report.residue = residue_R(problem, ResidueMethod::Series, {}, quad);
  report.near_zero_contribution = near_zero_contribution(spectrum);
  report.near_zero_missing = spectrum.near_zero_roots.empty();
  int largest = 0;
  for (int N : sizes) largest = std::max(largest, N);
  if (largest > static_cast<int>(spectrum.entries.size())) {
    std::ostringstream os;
    os << "trace report needs " << largest << " eigenvalues; spectrum has "
       << spectrum.entries.size();
    throw IncompleteSpectrum(os.str());
  }
  // One pass over the terms, reading off the requested partial sums in order.
  std::vector<double> cumulative(largest + 1, 0.0);
  for (int n = 1; n <= largest; ++n) {
    cumulative[n] = cumulative[n - 1] + trace_term(problem, spectrum.at(n), quad).value;
  }
  for (int N : sizes) {
    if (N < 1) throw IncompleteSpectrum("partial sum size must be at least 1");
    report.partial_sums.emplace_back(N, report.near_zero_contribution + 2.0 * cumulative[N]);
  }
  const auto& sums = report.partial_sums;
  report.converged_estimate = sums.empty() ? report.near_zero_contribution : sums.back().second;
  if (sums.size() >= 2 && sums.back().first == 2 * sums[sums.size() - 2].first) {
    report.converged_estimate = 2.0 * sums.back().second - sums[sums.size() - 2].second;
  }
  return report;
}

}  // namespace rsl
