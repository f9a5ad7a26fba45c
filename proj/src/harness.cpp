#include "rsl/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "json.hpp"
#include "rsl/asymptotics.hpp"
#include "rsl/errors.hpp"
#include "rsl/nodal.hpp"
#include "rsl/oracles.hpp"
#include "rsl/spectrum.hpp"
#include "rsl/trace.hpp"

namespace rsl {

using Json = nlohmann::ordered_json;

double convergence_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) {
    throw DegenerateInput("a slope fit needs at least 3 points, got " +
                          std::to_string(points.size()));
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [n, e] : points) {
    if (!(n > 0.0) || !(e > 0.0) || !std::isfinite(e)) {
      std::ostringstream os;
      os << "non-positive or non-finite point (" << n << ", " << e << ")";
      throw DegenerateInput(os.str());
    }
    const double x = std::log(n), y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(points.size());
  const double denom = m * sxx - sx * sx;
  if (!(std::abs(denom) > 1e-300)) throw DegenerateInput("all n are equal");
  return (m * sxy - sx * sy) / denom;
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

struct Report {
  Json results = Json::object();
  std::vector<Check> checks;
  std::vector<std::pair<std::string, std::string>> files;  // name, contents

  void check(std::string name, bool passed, std::string detail) {
    checks.push_back({std::move(name), passed, std::move(detail)});
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

/// Slope or null when the fit is degenerate.
Json slope_or_null(const std::vector<std::pair<double, double>>& points) {
  try {
    return convergence_slope(points);
  } catch (const DegenerateInput&) {
    return nullptr;
  }
}

/// Points whose error stands above the root-finding floor 1e-11 max(1, n).
std::vector<std::pair<double, double>> above_floor(
    const std::vector<std::pair<double, double>>& points) {
  std::vector<std::pair<double, double>> out;
  for (const auto& [n, e] : points) {
    if (e > 1e-11 * std::max(1.0, n)) out.emplace_back(n, e);
  }
  return out;
}

/// Slope check that passes outright when every error sits at the floor.
void slope_check(Report& r, const std::string& name, const Json& slope, std::size_t fitted,
                 double limit, const std::string& range) {
  if (fitted == 0) {
    r.check(name, true, "all errors at the 1e-11 root floor");
  } else if (!slope.is_null()) {
    r.check(name, slope.get<double>() <= limit,
            "slope " + fmt(slope.get<double>()) + " <= " + fmt(limit) + range);
  }
}

struct Context {
  const ExperimentConfig& cfg;
  ValidatedProblem problem;
  SpectrumConfig sc;
  QuadratureConfig quad;
  AsymptoticRegime regime;
};

Spectrum spectrum_to(const Context& ctx, int n_max) {
  return compute_spectrum(ctx.problem, n_max, ctx.sc);
}

void spectrum_section(const Context& ctx, const Spectrum& sp, Report& r) {
  std::ostringstream csv;
  csv << "n,lambda0,lambda,theorem1,residual,error,n3_error,bracket_lo,bracket_hi\n";
  std::vector<std::pair<double, double>> printed, pi_squared, first_order;
  double seed_constant = 0.0;
  bool brackets_ok = true, increasing = true;
  double previous = -INFINITY;
  for (const auto& e : sp.entries) {
    const double t1 = theorem1_eigenvalue(ctx.problem, e.n, ThirdTermConvention::AsPrinted,
                                          ctx.quad);
    const double error = e.root - t1;
    csv << e.n << ',' << csv_number(e.seed) << ',' << csv_number(e.root) << ','
        << csv_number(t1) << ',' << csv_number(e.residual) << ',' << csv_number(error) << ','
        << csv_number(std::pow(e.n, 3) * error) << ',' << csv_number(e.lo) << ','
        << csv_number(e.hi) << '\n';
    const bool sign_change = (e.theta_lo < 0.0) != (e.theta_hi < 0.0) || e.theta_lo == 0.0 ||
                             e.theta_hi == 0.0;
    brackets_ok = brackets_ok && sign_change && e.lo <= e.root && e.root <= e.hi;
    increasing = increasing && e.root > previous;
    previous = e.root;
    if (e.n >= 10) {
      seed_constant = std::max(seed_constant, e.n * std::abs(e.root - e.seed));
      printed.emplace_back(e.n, std::abs(error));
      pi_squared.emplace_back(
          e.n, std::abs(e.root - theorem1_eigenvalue(ctx.problem, e.n,
                                                     ThirdTermConvention::PiSquared, ctx.quad)));
      first_order.emplace_back(e.n,
                               std::abs(e.root - first_order_eigenvalue(ctx.problem, e.n, ctx.quad)));
    }
  }
  r.files.emplace_back("spectrum.csv", csv.str());

  Json near = Json::array();
  for (const auto& z : sp.near_zero_roots) {
    near.push_back({{"lambda_sq", z.lambda_sq}, {"imaginary", z.imaginary()}});
  }
  printed = above_floor(printed);
  pi_squared = above_floor(pi_squared);
  first_order = above_floor(first_order);
  const Json s_printed = slope_or_null(printed);
  const Json s_pi = slope_or_null(pi_squared);
  const Json s_first = slope_or_null(first_order);
  r.results["spectrum"] = {{"n_max", sp.entries.size()},
                           {"near_zero_roots", near},
                           {"seed_constant", seed_constant},
                           {"theorem1_slope", s_printed},
                           {"theorem1_slope_pi_squared", s_pi},
                           {"first_order_slope", s_first}};
  r.check("brackets_sign_change", brackets_ok, "every root inside a sign-changing bracket");
  r.check("roots_increasing", increasing, "roots strictly increasing in n");
  if (ctx.regime.gated() && sp.entries.size() >= 12) {
    const std::string range = " over n = 10.." + std::to_string(sp.entries.size());
    slope_check(r, "theorem1_slope", s_printed, printed.size(), -2.5, range);
    slope_check(r, "first_order_slope", s_first, first_order.size(), -1.8, range);
  }
}

void trace_section(const Context& ctx, const Spectrum& sp, const std::vector<int>& sizes,
                   Report& r) {
  const TraceReport t = trace_report(ctx.problem, sp, sizes, ctx.quad);
  std::ostringstream csv;
  csv << "N,partial_sum,rhs,difference\n";
  Json sums = Json::array();
  for (const auto& [N, S] : t.partial_sums) {
    csv << N << ',' << csv_number(S) << ',' << csv_number(t.rhs) << ',' << csv_number(S - t.rhs)
        << '\n';
    sums.push_back({{"N", N}, {"S", S}, {"difference", S - t.rhs}});
  }
  r.files.emplace_back("trace.csv", csv.str());

  const auto v0 = full_integrals(ctx.problem, 0.0, ctx.quad);
  const double k0 = k_from(ctx.problem, v0);
  const double s0 = s_from(v0);
  const double c = ctx.problem.coupling();
  const double contour = residue_R(ctx.problem, ResidueMethod::Contour, {}, ctx.quad);
  r.results["trace"] = {{"partial_sums", sums},
                        {"rhs", t.rhs},
                        {"rhs_terms",
                         {{"k0_term", -2.0 / kPi * k0},
                          {"residue", t.residue},
                          {"k0_squared_term", -k0 * k0},
                          {"s0_squared_term", c * c * s0 * s0}}},
                        {"residue_contour", contour},
                        {"near_zero_contribution", t.near_zero_contribution},
                        {"near_zero_missing", t.near_zero_missing},
                        {"converged_estimate", t.converged_estimate}};
  bool decreasing = true;
  for (std::size_t i = 1; i < t.partial_sums.size(); ++i) {
    decreasing = decreasing && std::abs(t.partial_sums[i].second - t.rhs) <
                                   std::abs(t.partial_sums[i - 1].second - t.rhs);
  }
  r.check("residue_series_vs_contour", std::abs(t.residue - contour) <= 1e-8,
          "|series - contour| = " + fmt(std::abs(t.residue - contour)) + " <= 1e-08");
  if (t.partial_sums.size() >= 2 && ctx.regime.gated()) {
    r.check("trace_decreasing", decreasing, "|S_N - rhs| decreasing in N");
    const double first = std::abs(t.partial_sums.front().second - t.rhs);
    const double last = std::abs(t.partial_sums.back().second - t.rhs);
    r.check("trace_envelope", last <= first / 4.0,
            "|S_last - rhs| = " + fmt(last) + " <= |S_first - rhs|/4 = " + fmt(first / 4.0));
  }
}

void nodal_section(const Context& ctx, const Spectrum& sp, const std::vector<int>& ns,
                   Report& r) {
  NodalConfig nc;
  nc.quadrature = ctx.quad;
  nc.integrator.step_count = ctx.cfg.step_count;
  nc.integrator.corrector_iterations = ctx.cfg.corrector_iterations;
  nc.integrator.scaling_threshold = ctx.cfg.scaling_threshold;
  Json tables = Json::array();
  std::vector<std::pair<double, double>> errors;
  bool sides_ok = true;
  for (int n : ns) {
    const NodalTable table = compare_nodes(ctx.problem, n, sp, nc);
    std::ostringstream csv;
    csv << "j,side,x_numeric,x_formula,abs_error,clamped\n";
    for (const auto& row : table.rows) {
      csv << (row.j ? std::to_string(*row.j) : "") << ',' << to_string(row.side) << ','
          << csv_number(row.x_numeric) << ',' << (row.x_formula ? csv_number(*row.x_formula) : "")
          << ',' << (row.abs_error ? csv_number(*row.abs_error) : "") << ','
          << (row.clamped ? 1 : 0) << '\n';
      sides_ok = sides_ok && (row.side == Side::Left ? row.x_numeric < kInterface
                                                     : row.x_numeric > kInterface);
    }
    r.files.emplace_back("nodal_" + std::to_string(n) + ".csv", csv.str());
    tables.push_back({{"n", n},
                      {"nodes", table.rows.size()},
                      {"matched", table.matched()},
                      {"unmatched_predictions", table.unmatched_predictions.size()},
                      {"split_mismatch", table.split_mismatch},
                      {"max_abs_error", table.max_abs_error()}});
    errors.emplace_back(n, table.max_abs_error());
  }
  const auto fitted = above_floor(errors);
  const Json slope = fitted.size() == ns.size() ? slope_or_null(fitted) : Json(nullptr);
  r.results["nodal"] = {{"tables", tables}, {"max_error_slope", slope}, {"claimed_order", -3}};
  r.check("nodal_sides", sides_ok, "left rows below pi/2, right rows above");
  if (ctx.regime.gated() && ns.size() >= 3) {
    slope_check(r, "nodal_slope", slope, fitted.size(), -2.0,
                " (formula remainder claimed O(n^-3))");
  }
}

void invariant_section(const Context& ctx, const Spectrum& sp, Report& r) {
  // Evenness at seeded random lambda.
  std::mt19937_64 rng(ctx.cfg.seed);
  const double top = sp.entries.empty() ? 10.0 : sp.entries.back().root;
  std::uniform_real_distribution<double> pick(0.1, top);
  ThetaEvaluator theta(ctx.problem, ctx.sc.theta);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double lambda = pick(rng);
    worst = std::max(worst, std::abs(theta.at_lambda(lambda) - theta.at_lambda(-lambda)));
  }
  r.results["evenness_max_difference"] = worst;
  r.check("theta_evenness", worst <= 1e-10,
          "max |Theta(l) - Theta(-l)| = " + fmt(worst) + " <= 1e-10 at 20 seeded lambda");

  // Picard oracle on this instance.
  const double lambda = 5.0;
  const PicardResult pic = picard_solution(ctx.problem, lambda, 60);
  const DenseSolution w1 = integrate_omega1(ctx.problem, lambda, ctx.sc.theta.integrator);
  const DenseSolution w2 = integrate_omega2(ctx.problem, lambda, w1, ctx.sc.theta.integrator);
  double distance = 0.0;
  for (const auto* pair : {&pic.omega1, &pic.omega2}) {
    const DenseSolution& ours = pair == &pic.omega1 ? w1 : w2;
    const auto xs = pair->breakpoints();
    const auto ys = pair->values();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      distance = std::max(distance, std::abs(ours.eval(xs[i]).y - ys[i]));
    }
  }
  r.results["picard_distance_lambda5"] = distance;
  r.check("picard_oracle", distance <= 1e-8,
          "sup |integrator - Picard| = " + fmt(distance) + " <= 1e-08 at lambda = 5");

  // Reciprocal expansion: n^4-scaled error, reported.
  double scaled = 0.0;
  for (const auto& e : sp.entries) {
    if (e.n < 10 || e.n > 40) continue;
    scaled = std::max(scaled, std::pow(e.n, 4) *
                                  std::abs(1.0 / e.root -
                                           reciprocal_expansion(ctx.problem, e.n, 1, ctx.quad)));
  }
  r.results["reciprocal_n4_error"] = scaled;
}

Json render_checks(const std::vector<Check>& checks) {
  Json out = Json::array();
  for (const auto& c : checks) {
    out.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  return out;
}

int max_of(const std::vector<int>& v) { return v.empty() ? 0 : *std::max_element(v.begin(), v.end()); }

std::vector<int> up_to(const std::vector<int>& v, int limit) {
  std::vector<int> out;
  for (int x : v) {
    if (x >= 1 && x <= limit) out.push_back(x);
  }
  return out;
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg, const RunOptions& options) {
  const std::string kind(to_string(cfg.kind));
  if (cfg.n_max < 1) throw ConfigError("n_max must be at least 1");
  Context ctx{cfg, require_valid(cfg.problem_spec()), cfg.spectrum_config(),
              cfg.quadrature_config(), {}};
  ctx.regime = asymptotic_regime(ctx.problem);
  if (options.strict && !ctx.regime.gated()) {
    throw PreconditionViolated("strict mode: instance is " + ctx.regime.label());
  }

  if (cfg.kind == ExperimentKind::Trace && max_of(cfg.trace_sizes) < 1) {
    throw ConfigError("trace_sizes must contain a positive size");
  }
  if (cfg.kind == ExperimentKind::Nodal) {
    if (cfg.nodal_n.empty()) throw ConfigError("nodal_n needs an index of at least 4");
    for (int n : cfg.nodal_n) {
      if (n < 4) throw ConfigError("nodal_n entries must be at least 4");
    }
  }

  Report r;
  try {
    switch (cfg.kind) {
      case ExperimentKind::Spectrum: {
        spectrum_section(ctx, spectrum_to(ctx, cfg.n_max), r);
        break;
      }
      case ExperimentKind::Trace: {
        const int top = max_of(cfg.trace_sizes);
        trace_section(ctx, spectrum_to(ctx, top), cfg.trace_sizes, r);
        break;
      }
      case ExperimentKind::Nodal: {
        const int top = max_of(cfg.nodal_n);
        nodal_section(ctx, spectrum_to(ctx, top), cfg.nodal_n, r);
        break;
      }
      case ExperimentKind::Verify: {
        const int top = std::max({cfg.n_max, max_of(cfg.trace_sizes), max_of(cfg.nodal_n)});
        const Spectrum sp = spectrum_to(ctx, top);
        Spectrum head = sp;
        head.entries.resize(cfg.n_max);
        spectrum_section(ctx, head, r);
        trace_section(ctx, sp, up_to(cfg.trace_sizes, top), r);
        std::vector<int> nodal;
        for (int n : up_to(cfg.nodal_n, top)) {
          if (n >= 4) nodal.push_back(n);
        }
        if (!nodal.empty()) nodal_section(ctx, sp, nodal, r);
        invariant_section(ctx, sp, r);
        break;
      }
    }
  } catch (const Error& e) {
    throw Error(kind + " experiment failed: " + e.what());
  }

  RunResult out;
  for (const auto& c : r.checks) {
    out.all_passed = out.all_passed && c.passed;
    out.check_lines.push_back(std::string(c.passed ? "PASS " : "FAIL ") + c.name + ": " +
                              c.detail);
  }
  Json summary;
  summary["experiment"] = kind;
  summary["seed"] = cfg.seed;
  summary["regime"] = {{"gated", ctx.regime.gated()}, {"label", ctx.regime.label()}};
  // The echo leaves out the output directory so that runs into different
  // directories still produce identical summaries.
  ExperimentConfig echo = cfg;
  echo.output.clear();
  summary["config"] = serialize_config(echo);
  summary["results"] = r.results;
  summary["checks"] = render_checks(r.checks);
  summary["all_passed"] = out.all_passed;
  out.summary_json = summary.dump(2) + "\n";
  r.files.emplace_back("summary.json", out.summary_json);

  const std::filesystem::path dir(cfg.output);
  std::filesystem::create_directories(dir);
  for (const auto& [name, contents] : r.files) {
    const auto path = dir / name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot write " + path.string());
    f << contents;
    out.files.push_back(path);
  }
  return out;
}

}  // namespace rsl
