#include "rsl/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "rsl/errors.hpp"
#include "rsl/roots.hpp"

namespace rsl {

void ThetaConfig::validate() const {
  integrator.validate();
  if (richardson_levels < 1 || richardson_levels > 6) {
    throw ConfigError("richardson_levels must be in [1, 6]");
  }
}

double lambda0(const ValidatedProblem& problem, int n) { return n * problem.seed_gap(); }

double theta0(const ValidatedProblem& problem, double lambda) {
  const auto& s = problem.spec();
  return -(s.gamma1 * s.a2 * lambda / (s.delta1 * s.p2)) *
         std::sin(lambda * problem.phase_rate());
}

ThetaEvaluator::ThetaEvaluator(ValidatedProblem problem, ThetaConfig cfg)
    : problem_(std::move(problem)), cfg_(cfg) {
  cfg_.validate();
}

const RegionSamples& ThetaEvaluator::samples(Side side, int steps) {
  const std::pair<int, int> key{static_cast<int>(side), steps};
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    // Bounded: a root search touches a handful of grids.
    if (cache_.size() >= 32) cache_.clear();
    it = cache_.emplace(key, std::make_unique<RegionSamples>(problem_, side, steps)).first;
  }
  return *it->second;
}

double ThetaEvaluator::raw(double lambda_sq, int steps_left, int steps_right) {
  ++evaluations_;
  const auto& ic = cfg_.integrator;
  const DenseSolution left =
      integrate_region(problem_, Side::Left, lambda_sq, left_initial_data(problem_), steps_left,
                       ic, &samples(Side::Left, steps_left));
  const DenseSolution right = integrate_region(
      problem_, Side::Right, lambda_sq, interface_transfer(problem_, left.at_back()),
      steps_right, ic, &samples(Side::Right, steps_right));
  const DenseValue end = right.at_back();
  return end.dy + problem_.spec().d * end.y;
}

double ThetaEvaluator::operator()(double lambda_sq) {
  const int levels = cfg_.richardson_levels;
  const int nl = effective_steps(cfg_.integrator, lambda_sq, problem_.p(Side::Left));
  const int nr = effective_steps(cfg_.integrator, lambda_sq, problem_.p(Side::Right));
  std::vector<double> t(levels);
  for (int k = 0; k < levels; ++k) t[k] = raw(lambda_sq, nl << k, nr << k);
  for (int j = 1; j < levels; ++j) {
    const double factor = std::ldexp(1.0, 3 + j) - 1.0;
    for (int k = levels - 1; k >= j; --k) t[k] += (t[k] - t[k - 1]) / factor;
  }
  return t[levels - 1];
}

double theta(const ValidatedProblem& problem, double lambda, const ThetaConfig& cfg) {
  ThetaEvaluator evaluator(problem, cfg);
  return evaluator.at_lambda(lambda);
}

double NearZeroRoot::magnitude() const { return std::sqrt(std::abs(lambda_sq)); }

const SpectrumEntry& Spectrum::at(int n) const {
  if (n < 1 || n > static_cast<int>(entries.size())) {
    std::ostringstream os;
    os << "spectrum index " << n << " outside [1, " << entries.size() << "]";
    throw IndexOutOfRange(os.str());
  }
  return entries[n - 1];
}

std::vector<double> Spectrum::roots() const {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.root);
  return out;
}

namespace {

bool opposite(double a, double b) { return (a < 0.0) != (b < 0.0); }

[[noreturn]] void no_bracket(int n, double seed, double lo, double hi,
                             const std::vector<std::pair<double, double>>& samples) {
  std::ostringstream os;
  os.precision(10);
  os << "n = " << n << ": no sign change of Theta near seed " << seed << " in [" << lo << ", "
     << hi << "]; samples:";
  for (const auto& [x, v] : samples) os << " (" << x << ", " << v << ")";
  throw BracketNotFound(os.str());
}

}  // namespace

SpectrumEntry find_eigenvalue(ThetaEvaluator& theta, int n, const RootConfig& cfg) {
  if (n < 1) throw IndexOutOfRange("eigenvalue index must be at least 1");
  const ValidatedProblem& problem = theta.problem();
  const long start_count = theta.evaluations();
  const auto f = [&](double lambda) { return theta(lambda * lambda); };

  const double seed = lambda0(problem, n);
  const double gap = problem.seed_gap();
  // Keep clear of the near-zero window, which is reported separately.
  const double floor = 0.5 * gap;
  double rho = cfg.bracket_fraction * gap;

  double lo = 0.0, hi = 0.0, flo = 0.0, fhi = 0.0;
  bool found = false;
  std::vector<std::pair<double, double>> seen;
  for (int attempt = 0; attempt <= cfg.max_expansions && !found; ++attempt) {
    lo = std::max(seed - rho, floor);
    hi = seed + rho;
    flo = f(lo);
    fhi = f(hi);
    seen = {{lo, flo}, {hi, fhi}};
    if (opposite(flo, fhi) || flo == 0.0 || fhi == 0.0) {
      found = true;
      break;
    }
    // Same sign at both ends: look for an inner sign change nearest the seed.
    double best = INFINITY;
    double prev_x = lo, prev_f = flo;
    for (int i = 1; i <= cfg.scan_points; ++i) {
      const double x = i == cfg.scan_points ? hi : lo + (hi - lo) * i / cfg.scan_points;
      const double v = i == cfg.scan_points ? fhi : f(x);
      if (i < cfg.scan_points) seen.emplace_back(x, v);
      if (opposite(prev_f, v)) {
        const double distance = std::abs(0.5 * (prev_x + x) - seed);
        if (distance < best) {
          best = distance;
          lo = prev_x;
          flo = prev_f;
          hi = x;
          fhi = v;
          found = true;
        }
      }
      prev_x = x;
      prev_f = v;
    }
    rho *= cfg.expansion;
  }
  if (!found) {
    std::sort(seen.begin(), seen.end());
    no_bracket(n, seed, seen.front().first, seen.back().first, seen);
  }

  const double width = cfg.relative_width * std::max(1.0, seed);
  const double xtol = std::min(0.25 * width, cfg.step_tolerance * std::max(1.0, seed));
  RootResult r = bisect_secant(f, lo, flo, hi, fhi, cfg.bisection_steps, xtol, cfg.max_iterations);

  SpectrumEntry e;
  e.n = n;
  e.seed = seed;
  e.root = r.root;
  e.residual = std::abs(r.value);
  // A tight bracket around the root: probe at +-eta, widening until the
  // probes straddle a sign change.
  double eta = 0.25 * width;
  for (int i = 0; i < 48; ++i, eta *= 2.0) {
    const double a = std::max(r.root - eta, r.lo);
    const double b = std::min(r.root + eta, r.hi);
    const double fa = f(a);
    const double fb = f(b);
    const bool whole = a == r.lo && b == r.hi;
    if (opposite(fa, fb) || fa == 0.0 || fb == 0.0 || whole) {
      e.lo = a;
      e.hi = b;
      e.theta_lo = fa;
      e.theta_hi = fb;
      // Near the last ulp, report whichever probed point has the smallest |Theta|.
      if (std::abs(fa) < e.residual) {
        e.root = a;
        e.residual = std::abs(fa);
      }
      if (std::abs(fb) < e.residual) {
        e.root = b;
        e.residual = std::abs(fb);
      }
      break;
    }
  }
  e.evaluations = static_cast<int>(theta.evaluations() - start_count);
  return e;
}

SpectrumEntry find_eigenvalue(const ValidatedProblem& problem, int n, const SpectrumConfig& cfg) {
  ThetaEvaluator evaluator(problem, cfg.theta);
  return find_eigenvalue(evaluator, n, cfg.root);
}

std::vector<NearZeroRoot> near_zero_roots(const ValidatedProblem& problem,
                                          const SpectrumConfig& cfg) {
  std::vector<NearZeroRoot> out;
  if (!cfg.near_zero.enabled) return out;
  const int half = std::max(2, cfg.near_zero.samples);
  const double first = lambda0(problem, 1);
  const double sigma_max = 0.25 * first * first;
  const double reach = cfg.near_zero.imaginary_reach * first;
  const double sigma_min = -reach * reach;
  ThetaEvaluator f(problem, cfg.theta);

  // Zero is a sample point, so the unperturbed double root at lambda = 0 is hit exactly.
  const int m = 2 * half;
  std::vector<double> sigma(m + 1), value(m + 1);
  for (int k = 0; k <= m; ++k) {
    sigma[k] = k <= half ? sigma_min * (1.0 - static_cast<double>(k) / half)
                         : sigma_max * (k - half) / static_cast<double>(half);
    value[k] = f(sigma[k]);
  }
  const double tol = cfg.root.relative_width * std::max(1.0, -sigma_min);
  for (int k = 1; k < m; ++k) {
    if (value[k] == 0.0) out.push_back({sigma[k], sigma[k], sigma[k]});
  }
  for (int k = 0; k < m; ++k) {
    if (value[k] == 0.0 || value[k + 1] == 0.0 || !opposite(value[k], value[k + 1])) continue;
    const RootResult r = bisect_secant(f, sigma[k], value[k], sigma[k + 1], value[k + 1],
                                       cfg.root.bisection_steps, tol, cfg.root.max_iterations);
    out.push_back({r.root, r.lo, r.hi});
  }
  std::sort(out.begin(), out.end(),
            [](const NearZeroRoot& a, const NearZeroRoot& b) { return a.lambda_sq < b.lambda_sq; });
  return out;
}

namespace {

Spectrum assemble(const ValidatedProblem& problem, int n_max, const SpectrumConfig& cfg,
                  bool parallel) {
  if (n_max < 1) throw IndexOutOfRange("n_max must be at least 1");
  cfg.theta.validate();
  Spectrum out;
  out.entries.resize(n_max);
  std::vector<std::string> failures(n_max);

  const auto search = [&](int i) {
    try {
      ThetaEvaluator evaluator(problem, cfg.theta);
      out.entries[i] = find_eigenvalue(evaluator, i + 1, cfg.root);
    } catch (const std::exception& ex) {
      failures[i] = ex.what();
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = n_max - 1; i >= 0; --i) search(i);
  } else {
    for (int i = 0; i < n_max; ++i) search(i);
  }

  std::string report;
  for (const auto& message : failures) {
    if (message.empty()) continue;
    if (!report.empty()) report += "; ";
    report += message;
  }
  if (!report.empty()) throw BracketNotFound(report);

  out.near_zero_roots = near_zero_roots(problem, cfg);
  return out;
}

}  // namespace

Spectrum compute_spectrum(const ValidatedProblem& problem, int n_max, const SpectrumConfig& cfg) {
  return assemble(problem, n_max, cfg, true);
}

Spectrum compute_spectrum_serial(const ValidatedProblem& problem, int n_max,
                                 const SpectrumConfig& cfg) {
  return assemble(problem, n_max, cfg, false);
}

}  // namespace rsl
