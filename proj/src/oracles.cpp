#include "rsl/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rsl/errors.hpp"
#include "rsl/roots.hpp"
#include "rsl/spectrum.hpp"

namespace rsl {

namespace {

/// sin(w L) / w, equal to L at w = 0.
double sin_over(double w, double L) {
  const double z = w * L;
  if (std::abs(z) < 1e-4) return L * (1.0 - z * z / 6.0 + z * z * z * z / 120.0);
  return std::sin(z) / w;
}

}  // namespace

double exact_theta_qzero(const ValidatedProblem& problem, double lambda) {
  const auto& s = problem.spec();
  const double w1 = lambda / s.p1;
  const double w2 = lambda / s.p2;
  const double h = kInterface;
  // omega_1 = a2 cos(w1 x) - a1 sin(w1 x) / w1
  const double y1 = s.a2 * std::cos(w1 * h) - s.a1 * sin_over(w1, h);
  const double dy1 = -s.a2 * w1 * std::sin(w1 * h) - s.a1 * std::cos(w1 * h);
  const double y2 = s.gamma1 / s.delta1 * y1;
  const double dy2 = s.gamma2 / s.delta2 * dy1;
  // omega_2 = y2 cos(w2 (x - pi/2)) + dy2 sin(w2 (x - pi/2)) / w2
  const double end = y2 * std::cos(w2 * h) + dy2 * sin_over(w2, h);
  const double dend = -y2 * w2 * std::sin(w2 * h) + dy2 * std::cos(w2 * h);
  return dend + s.d * end;
}

namespace {

struct RegionGrid {
  Side side;
  double a;
  double h;
  int points;
  double x(int i) const { return a + h * i; }
};

/// Cubic Lagrange interpolation of nodal values at s.
double interpolate(const RegionGrid& g, const std::vector<double>& w, double s) {
  const double t = (s - g.a) / g.h;
  int k = static_cast<int>(std::floor(t));
  k = std::clamp(k - 1, 0, g.points - 4);
  const double u = t - k;
  const double l0 = -(u - 1.0) * (u - 2.0) * (u - 3.0) / 6.0;
  const double l1 = u * (u - 2.0) * (u - 3.0) / 2.0;
  const double l2 = -u * (u - 1.0) * (u - 3.0) / 2.0;
  const double l3 = u * (u - 1.0) * (u - 2.0) / 6.0;
  return l0 * w[k] + l1 * w[k + 1] + l2 * w[k + 2] + l3 * w[k + 3];
}

/// Running integral from the first node: Simpson on even counts, Simpson plus a
/// closing 3/8 panel on odd counts, and a three-point rule for the first cell.
void cumulative(const std::vector<double>& f, double h, std::vector<double>& out) {
  const int m = static_cast<int>(f.size());
  out.assign(m, 0.0);
  out[1] = h * (5.0 * f[0] + 8.0 * f[1] - f[2]) / 12.0;
  for (int i = 2; i < m; ++i) {
    if (i % 2 == 0) {
      out[i] = out[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
    } else {
      out[i] = out[i - 3] + 3.0 * h / 8.0 * (f[i - 3] + 3.0 * f[i - 2] + 3.0 * f[i - 1] + f[i]);
    }
  }
}

struct RegionResult {
  std::vector<double> y, dy, ddy;
  std::vector<double> deltas;
  int iterations = 0;
};

RegionResult iterate_region(const ValidatedProblem& problem, const RegionGrid& g, double lambda,
                            double y0, double dy0, int iterations, const PicardConfig& cfg) {
  const double p = problem.p(g.side);
  const double w = lambda / p;
  const int m = g.points;
  std::vector<double> q(m), delayed(m), c(m), s(m);
  RegionResult r;
  r.y.resize(m);
  r.dy.resize(m);
  for (int i = 0; i < m; ++i) {
    const double x = g.x(i);
    q[i] = problem.q(x, g.side);
    delayed[i] = std::clamp(x - problem.delay(x, g.side), g.a, x);
    c[i] = std::cos(w * (x - g.a));
    s[i] = std::sin(w * (x - g.a));
    r.y[i] = y0 * c[i] + dy0 * s[i] / w;
    r.dy[i] = -y0 * w * s[i] + dy0 * c[i];
  }
  const std::vector<double> base_y = r.y, base_dy = r.dy;

  std::vector<double> u(m), fc(m), fs(m), ic, is, next(m), next_dy(m);
  const auto sample_delayed = [&](const std::vector<double>& values) {
    for (int i = 0; i < m; ++i) u[i] = interpolate(g, values, delayed[i]);
  };
  for (int k = 1; k <= iterations; ++k) {
    sample_delayed(r.y);
    for (int i = 0; i < m; ++i) {
      fc[i] = q[i] * c[i] * u[i];
      fs[i] = q[i] * s[i] * u[i];
    }
    cumulative(fc, g.h, ic);
    cumulative(fs, g.h, is);
    double delta = 0.0, size = 0.0;
    for (int i = 0; i < m; ++i) {
      next[i] = base_y[i] - (s[i] * ic[i] - c[i] * is[i]) / (lambda * p);
      next_dy[i] = base_dy[i] - (c[i] * ic[i] + s[i] * is[i]) / (p * p);
      delta = std::max(delta, std::abs(next[i] - r.y[i]));
      size = std::max(size, std::abs(next[i]));
    }
    r.y.swap(next);
    r.dy.swap(next_dy);
    r.deltas.push_back(delta);
    r.iterations = k;
    if (!std::isfinite(delta)) throw NonConvergence("Picard iterate is not finite");
    if (k == 8 && delta >= r.deltas.front()) {
      std::ostringstream os;
      os << "Picard iteration on the " << to_string(g.side) << " region did not contract: change "
         << r.deltas.front() << " after one sweep, " << delta << " after eight";
      throw NonConvergence(os.str());
    }
    if (delta <= cfg.tolerance * std::max(1.0, size)) break;
  }
  sample_delayed(r.y);
  r.ddy.resize(m);
  for (int i = 0; i < m; ++i) r.ddy[i] = -(lambda * lambda * r.y[i] + q[i] * u[i]) / (p * p);
  return r;
}

DenseSolution to_dense(const RegionGrid& g, double lambda, RegionResult& r) {
  std::vector<double> x(g.points);
  for (int i = 0; i < g.points; ++i) x[i] = g.x(i);
  x.back() = g.side == Side::Left ? kInterface : kPi;
  return DenseSolution(g.side, lambda * lambda, 3, std::move(x), std::move(r.y), std::move(r.dy),
                       std::move(r.ddy));
}

}  // namespace

PicardResult picard_solution(const ValidatedProblem& problem, double lambda, int iterations,
                             const PicardConfig& cfg) {
  if (lambda == 0.0) throw DomainError("Picard kernels need lambda != 0");
  if (iterations < 0) throw ConfigError("iterations must be non-negative");
  if (cfg.grid < 4) throw ConfigError("Picard grid needs at least 4 intervals");
  const auto& spec = problem.spec();
  const double h = kInterface / cfg.grid;
  const RegionGrid left{Side::Left, 0.0, h, cfg.grid + 1};
  const RegionGrid right{Side::Right, kInterface, h, cfg.grid + 1};

  RegionResult r1 = iterate_region(problem, left, lambda, spec.a2, -spec.a1, iterations, cfg);
  const double y2 = spec.gamma1 / spec.delta1 * r1.y.back();
  const double dy2 = spec.gamma2 / spec.delta2 * r1.dy.back();
  RegionResult r2 = iterate_region(problem, right, lambda, y2, dy2, iterations, cfg);

  const int it1 = r1.iterations, it2 = r2.iterations;
  std::vector<double> d1 = r1.deltas, d2 = r2.deltas;
  return {to_dense(left, lambda, r1), to_dense(right, lambda, r2), it1, it2, std::move(d1),
          std::move(d2)};
}

double ClassicalReport::max_difference() const {
  double worst = 0.0;
  for (const auto& r : rows) worst = std::max(worst, std::abs(r.difference()));
  return worst;
}

double classical_shooting_theta(const ValidatedProblem& problem, double lambda, int steps) {
  const auto& spec = problem.spec();
  const double l2 = lambda * lambda;
  double y = spec.a2, v = -spec.a1;
  const auto run = [&](Side side, double a) {
    const double h = kInterface / steps;
    const auto acc = [&](double x, double yy) { return -(l2 + problem.q(x, side)) * yy; };
    for (int i = 0; i < steps; ++i) {
      const double x = a + i * h;
      const double xm = x + 0.5 * h;
      const double xe = i + 1 == steps ? a + kInterface : x + h;
      const double k1y = v, k1v = acc(x, y);
      const double k2y = v + 0.5 * h * k1v, k2v = acc(xm, y + 0.5 * h * k1y);
      const double k3y = v + 0.5 * h * k2v, k3v = acc(xm, y + 0.5 * h * k2y);
      const double k4y = v + h * k3v, k4v = acc(xe, y + h * k3y);
      y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
      v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
  };
  run(Side::Left, 0.0);
  y *= spec.gamma1 / spec.delta1;
  v *= spec.gamma2 / spec.delta2;
  run(Side::Right, kInterface);
  return v + spec.d * y;
}

ClassicalReport classical_reduction_check(const ValidatedProblem& problem, int n_max) {
  const auto& s = problem.spec();
  std::ostringstream why;
  if (s.p1 != 1.0 || s.p2 != 1.0) why << "p1 = p2 = 1 required; ";
  if (s.gamma1 != s.delta1 || s.gamma2 != s.delta2) why << "gamma_i = delta_i required; ";
  constexpr int kSamples = 1024;
  for (const Side side : {Side::Left, Side::Right}) {
    const double a = side == Side::Left ? 0.0 : kInterface;
    for (int i = 0; i <= kSamples; ++i) {
      const double x = a + kInterface * i / kSamples;
      if (problem.delay(x, side) != 0.0) {
        why << "Delay must vanish (Delay(" << x << ") = " << problem.delay(x, side) << "); ";
        break;
      }
    }
  }
  if (!why.str().empty()) throw PreconditionViolated(why.str());
  if (n_max < 1) throw IndexOutOfRange("n_max must be at least 1");

  const Spectrum spectrum = compute_spectrum(problem, n_max);
  ClassicalReport report;
  for (const auto& e : spectrum.entries) {
    const int steps = 4096 * std::max(1, static_cast<int>(std::ceil(e.root / 16.0)));
    const auto f = [&](double lambda) {
      const double coarse = classical_shooting_theta(problem, lambda, steps);
      const double fine = classical_shooting_theta(problem, lambda, 2 * steps);
      return fine + (fine - coarse) / 15.0;
    };
    // The classical root sits within a small fraction of the gap of the toolkit's.
    double half = 1e-3;
    double lo = e.root - half, hi = e.root + half;
    while ((f(lo) < 0.0) == (f(hi) < 0.0) && half < 0.25) {
      half *= 4.0;
      lo = e.root - half;
      hi = e.root + half;
    }
    report.rows.push_back({e.n, e.root, bisect(f, lo, hi, 1e-13)});
  }
  return report;
}

}  // namespace rsl
