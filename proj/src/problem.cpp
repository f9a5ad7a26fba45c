#include "rsl/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rsl/errors.hpp"

namespace rsl {

namespace {

// Slack for x - Delay(x) >= bound; absorbs rounding in user-supplied branches.
constexpr double kDelaySlack = 1e-12;

}  // namespace

std::string_view to_string(Side side) { return side == Side::Left ? "left" : "right"; }

PiecewiseFn::PiecewiseFn(RealFunction left, RealFunction right)
    : left_(std::move(left)), right_(std::move(right)) {
  if (!left_ || !right_) throw ConfigError("piecewise function needs both branches");
}

PiecewiseFn PiecewiseFn::constant(double value) {
  return uniform([value](double) { return value; });
}

PiecewiseFn PiecewiseFn::uniform(RealFunction f) { return PiecewiseFn(f, f); }

double PiecewiseFn::operator()(double x) const {
  if (x == kInterface) throw DomainError("evaluation at pi/2 requires an explicit side");
  return at(x, x < kInterface ? Side::Left : Side::Right);
}

double PiecewiseFn::at(double x, Side side) const {
  if (side == Side::Left ? (x < 0.0 || x > kInterface) : (x < kInterface || x > kPi)) {
    std::ostringstream os;
    os << "x = " << x << " is outside the " << to_string(side) << " branch";
    throw DomainError(os.str());
  }
  return branch(side)(x);
}

std::string ProblemIssue::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case IssueKind::ZeroCoefficient:
      os << "ZeroCoefficient(\"" << name << "\")";
      break;
    case IssueKind::NonFinite:
      os << "NonFinite(\"" << name << "\") at x = " << x;
      break;
    case IssueKind::NegativeDelay:
      os << "NegativeDelay at x = " << x << ": Delay(x) = " << value;
      break;
    case IssueKind::DelayRangeViolation:
      os << "DelayRangeViolation at x = " << x << ": x - Delay(x) = " << value;
      break;
  }
  return os.str();
}

double ValidatedProblem::coupling() const {
  return (spec_->p1 + spec_->p2) / (2.0 * spec_->p1 * spec_->p2);
}

double ValidatedProblem::phase_rate() const { return kPi * coupling(); }

double ValidatedProblem::seed_gap() const { return 1.0 / coupling(); }

ValidatedProblem make_validated(ProblemSpec spec) {
  return ValidatedProblem(std::make_shared<const ProblemSpec>(std::move(spec)));
}

ValidationResult validate_problem(const ProblemSpec& spec, int grid_points) {
  if (grid_points < 2) throw ConfigError("validation grid needs at least 2 points");
  std::vector<ProblemIssue> issues;

  const std::pair<const char*, double> scalars[] = {
      {"p1", spec.p1},         {"p2", spec.p2},         {"a1", spec.a1},
      {"a2", spec.a2},         {"d", spec.d},           {"gamma1", spec.gamma1},
      {"gamma2", spec.gamma2}, {"delta1", spec.delta1}, {"delta2", spec.delta2}};
  for (const auto& [name, value] : scalars) {
    if (!std::isfinite(value)) issues.push_back({IssueKind::NonFinite, name, 0.0, value});
  }
  // Denominators of the transfer conditions and the asymptotic formulas.
  const std::pair<const char*, double> nonzero[] = {
      {"p1", spec.p1},         {"p2", spec.p2},         {"a2", spec.a2},
      {"gamma1", spec.gamma1}, {"delta1", spec.delta1}, {"delta2", spec.delta2}};
  for (const auto& [name, value] : nonzero) {
    if (value == 0.0) issues.push_back({IssueKind::ZeroCoefficient, name, 0.0, value});
  }

  const auto scan = [&](Side side, double lo, double hi, double bound) {
    for (int i = 0; i < grid_points; ++i) {
      const double x = i + 1 == grid_points
                           ? hi
                           : lo + (hi - lo) * static_cast<double>(i) / (grid_points - 1);
      const double qx = spec.q.at(x, side);
      const double dx = spec.delay.at(x, side);
      if (!std::isfinite(qx)) issues.push_back({IssueKind::NonFinite, "q", x, qx});
      if (!std::isfinite(dx)) {
        issues.push_back({IssueKind::NonFinite, "delay", x, dx});
        continue;
      }
      if (dx < 0.0) issues.push_back({IssueKind::NegativeDelay, "delay", x, dx});
      if (x - dx < bound - kDelaySlack) {
        issues.push_back({IssueKind::DelayRangeViolation, "delay", x, x - dx});
      }
    }
  };
  scan(Side::Left, 0.0, kInterface, 0.0);
  scan(Side::Right, kInterface, kPi, kInterface);

  if (!issues.empty()) return issues;
  return make_validated(spec);
}

ValidatedProblem require_valid(const ProblemSpec& spec, int grid_points) {
  auto result = validate_problem(spec, grid_points);
  if (auto* issues = std::get_if<std::vector<ProblemIssue>>(&result)) {
    std::string text;
    for (const auto& issue : *issues) {
      if (!text.empty()) text += "; ";
      text += issue.describe();
    }
    throw InvalidProblem(text);
  }
  return std::get<ValidatedProblem>(std::move(result));
}

DelayedPoint delayed_argument(const ValidatedProblem& problem, double x) {
  if (!(x >= 0.0 && x <= kPi) || x == kInterface) {
    std::ostringstream os;
    os << "x = " << x << " is outside [0, pi/2) U (pi/2, pi]";
    throw DomainError(os.str());
  }
  const Side side = x < kInterface ? Side::Left : Side::Right;
  const double floor = side == Side::Left ? 0.0 : kInterface;
  const double s = x - problem.delay(x, side);
  return {std::clamp(s, floor, x), side};
}

}  // namespace rsl
