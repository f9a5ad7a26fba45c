#include "rsl/nodal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rsl/errors.hpp"
#include "rsl/roots.hpp"

namespace rsl {

std::vector<double> NumericNodes::all() const {
  std::vector<double> out(left);
  out.insert(out.end(), right.begin(), right.end());
  return out;
}

namespace {

std::vector<double> zeros_of(const DenseSolution& sol, double lambda, double p,
                             const NodalConfig& cfg) {
  const double a = sol.front(), b = sol.back();
  const double oscillations = std::abs(lambda) * (b - a) / (2.0 * kPi * p);
  const int samples =
      std::max(cfg.points_per_oscillation,
               static_cast<int>(std::ceil(cfg.points_per_oscillation * oscillations)));
  const auto y = [&](double x) { return sol.eval(x).y; };
  std::vector<double> out;
  double prev_x = a, prev_y = y(a);
  for (int k = 1; k <= samples; ++k) {
    const double x = k == samples ? b : a + (b - a) * k / samples;
    const double v = y(x);
    if (v == 0.0 && k < samples) {
      out.push_back(x);
    } else if (prev_y != 0.0 && v != 0.0 && (prev_y < 0.0) != (v < 0.0)) {
      out.push_back(bisect(y, prev_x, x, cfg.tolerance));
    }
    prev_x = x;
    prev_y = v;
  }
  return out;
}

NumericNodes solve_nodes(const ValidatedProblem& problem, double lambda, const NodalConfig& cfg,
                         int multiplier) {
  IntegratorConfig ic = cfg.integrator;
  ic.step_count *= multiplier;
  const DenseSolution w1 = integrate_omega1(problem, lambda, ic);
  const DenseSolution w2 = integrate_omega2(problem, lambda, w1, ic);
  return {zeros_of(w1, lambda, problem.p(Side::Left), cfg),
          zeros_of(w2, lambda, problem.p(Side::Right), cfg), std::nullopt};
}

}  // namespace

NumericNodes numeric_nodes(const ValidatedProblem& problem, double lambda,
                           const NodalConfig& cfg) {
  if (cfg.step_multiplier < 1) throw ConfigError("step_multiplier must be at least 1");
  NumericNodes nodes = solve_nodes(problem, lambda, cfg, cfg.step_multiplier);
  if (cfg.verify) {
    const NumericNodes fine = solve_nodes(problem, lambda, cfg, 4 * cfg.step_multiplier);
    if (fine.left.size() == nodes.left.size() && fine.right.size() == nodes.right.size()) {
      double shift = 0.0;
      const auto a = nodes.all(), b = fine.all();
      for (std::size_t i = 0; i < a.size(); ++i) shift = std::max(shift, std::abs(a[i] - b[i]));
      nodes.verification_shift = shift;
    }
  }
  return nodes;
}

double NodalTable::max_abs_error() const {
  double worst = 0.0;
  for (const auto& r : rows) {
    if (r.abs_error) worst = std::max(worst, *r.abs_error);
  }
  return worst;
}

std::size_t NodalTable::matched() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const NodalRow& r) { return r.j.has_value(); }));
}

NodalTable compare_nodes(const ValidatedProblem& problem, const SpectrumEntry& entry,
                         const NodalConfig& cfg) {
  const int n = entry.n;
  if (n < 4) {
    std::ostringstream os;
    os << "nodal comparison needs n >= 4, got " << n;
    throw IndexOutOfRange(os.str());
  }
  NodalTable table;
  table.n = n;
  table.lambda = entry.root;
  table.regime = asymptotic_regime(problem).label();

  const NumericNodes nodes = numeric_nodes(problem, entry.root, cfg);
  table.split_mismatch = static_cast<int>(nodes.left.size()) != n / 2;

  struct Prediction {
    int j;
    double x;
    bool clamped;
    Side side;
  };
  std::vector<Prediction> predictions;
  for (int j = 1; j <= n; ++j) {
    const bool left = j <= n / 2;
    const NodePrediction p = left ? nodal_formula_left(problem, n, j, cfg.quadrature)
                                  : nodal_formula_right(problem, n, j, cfg.quadrature);
    predictions.push_back({j, p.x, p.clamped, left ? Side::Left : Side::Right});
  }

  for (const Side side : {Side::Left, Side::Right}) {
    for (double x : side == Side::Left ? nodes.left : nodes.right) {
      NodalRow row;
      row.side = side;
      row.x_numeric = x;
      table.rows.push_back(row);
    }
  }

  // Nearest prediction within half the local node gap; a prediction claimed by
  // two nodes goes to the closer one.
  std::vector<int> owner(predictions.size(), -1);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const double half_gap = 0.5 * kPi * problem.p(row.side) / std::abs(entry.root);
    int best = -1;
    double best_distance = half_gap;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
      const double distance = std::abs(predictions[i].x - row.x_numeric);
      if (distance <= best_distance) {
        best = static_cast<int>(i);
        best_distance = distance;
      }
    }
    if (best < 0) continue;
    const int previous = owner[best];
    if (previous >= 0 && std::abs(predictions[best].x - table.rows[previous].x_numeric) <=
                             best_distance) {
      continue;
    }
    if (previous >= 0) table.rows[previous].j.reset();
    owner[best] = static_cast<int>(r);
    table.rows[r].j = predictions[best].j;
  }
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const auto& p = predictions[i];
    if (owner[i] < 0 || !table.rows[owner[i]].j) {
      table.unmatched_predictions.emplace_back(p.j, p.x);
      continue;
    }
    auto& row = table.rows[owner[i]];
    row.x_formula = p.x;
    row.abs_error = std::abs(p.x - row.x_numeric);
    row.clamped = p.clamped;
  }
  for (auto& row : table.rows) {
    if (!row.j) {
      row.x_formula.reset();
      row.abs_error.reset();
    }
  }
  return table;
}

NodalTable compare_nodes(const ValidatedProblem& problem, int n, const Spectrum& spectrum,
                         const NodalConfig& cfg) {
  return compare_nodes(problem, spectrum.at(n), cfg);
}

}  // namespace rsl
