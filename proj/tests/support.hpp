#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "rsl/problem.hpp"

namespace test {

using rsl::kInterface;
using rsl::kPi;

inline rsl::ProblemSpec symmetric_spec() { return {}; }

inline rsl::ProblemSpec robin_spec(double d) {
  rsl::ProblemSpec s;
  s.d = d;
  return s;
}

/// cos(x) on both sides, Delay = 0.1 x on the left and 0.05 (x - pi/2) on the right.
inline rsl::ProblemSpec smooth_spec() {
  rsl::ProblemSpec s;
  s.a1 = 0.5;
  s.d = 0.3;
  s.q = rsl::PiecewiseFn::uniform([](double x) { return std::cos(x); });
  s.delay = rsl::PiecewiseFn([](double x) { return 0.1 * x; },
                             [](double x) { return 0.05 * (x - kInterface); });
  return s;
}

inline rsl::ValidatedProblem valid(const rsl::ProblemSpec& s) { return rsl::require_valid(s); }

/// Plain bisection, kept separate from the library's root finders.
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double tol = 1e-14) {
  double flo = f(lo);
  for (int i = 0; i < 200 && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Root of tan(pi l) = d / l in (n, n + 1/2), written as l sin(pi l) - d cos(pi l).
inline double robin_root(int n, double d) {
  return bisect([d](double l) { return l * std::sin(kPi * l) - d * std::cos(kPi * l); },
                n + 1e-12, n + 0.5 - 1e-12);
}

/// Theta for q = 0 by direct substitution of the trigonometric solutions.
inline double qzero_theta(const rsl::ProblemSpec& s, double l) {
  const double w1 = l / s.p1, w2 = l / s.p2, h = kPi / 2;
  const double y = s.a2 * std::cos(w1 * h) - s.a1 * std::sin(w1 * h) / w1;
  const double dy = -s.a2 * w1 * std::sin(w1 * h) - s.a1 * std::cos(w1 * h);
  const double u = s.gamma1 / s.delta1 * y, du = s.gamma2 / s.delta2 * dy;
  const double end = u * std::cos(w2 * h) + du * std::sin(w2 * h) / w2;
  const double dend = -u * w2 * std::sin(w2 * h) + du * std::cos(w2 * h);
  return dend + s.d * end;
}

/// Smooth random instance: q = c0 + c1 cos(k x), Delay linear in each region.
inline rsl::ProblemSpec random_instance(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_real_distribution<double> pos(0.5, 2.0);
  std::uniform_real_distribution<double> slope(0.05, 0.9);
  const auto nonzero = [&] {
    double v = 0.0;
    while (std::abs(v) < 0.1) v = coef(rng);
    return v;
  };
  rsl::ProblemSpec s;
  s.p1 = pos(rng);
  s.p2 = pos(rng);
  s.a1 = nonzero();
  s.a2 = nonzero();
  s.d = nonzero();
  s.gamma1 = nonzero();
  s.delta1 = nonzero();
  s.delta2 = nonzero();
  s.gamma2 = s.gamma1 * s.delta2 / s.delta1;
  const double c0 = coef(rng), c1 = coef(rng), k = 1.0 + 3.0 * pos(rng);
  const double c0r = coef(rng), c1r = coef(rng);
  s.q = rsl::PiecewiseFn([=](double x) { return c0 + c1 * std::cos(k * x); },
                    [=](double x) { return c0r + c1r * std::sin(k * x); });
  const double sl = slope(rng), sr = slope(rng);
  s.delay = rsl::PiecewiseFn([=](double x) { return sl * x; },
                        [=](double x) { return sr * (x - kInterface); });
  return s;
}

inline double slope(const std::vector<double>& n, const std::vector<double>& e) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double x = std::log(n[i]), y = std::log(e[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace test
