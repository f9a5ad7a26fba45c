#pragma once

#include <functional>
#include <memory>
#include <numbers>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rsl {

inline constexpr double kPi = std::numbers::pi;
/// Location of the interface point.
inline constexpr double kInterface = std::numbers::pi / 2;

enum class Side { Left, Right };

std::string_view to_string(Side side);

using RealFunction = std::function<double(double)>;

/// A function on [0, pi/2) U (pi/2, pi] given by two branches, each continuous
/// up to the interface so that one-sided limits at pi/2 exist.
class PiecewiseFn {
 public:
  PiecewiseFn(RealFunction left, RealFunction right);

  static PiecewiseFn constant(double value);
  static PiecewiseFn uniform(RealFunction f);

  /// Throws DomainError at exactly pi/2 (a side must be requested there) and
  /// outside [0, pi].
  double operator()(double x) const;
  double at(double x, Side side) const;
  const RealFunction& branch(Side side) const {
    return side == Side::Left ? left_ : right_;
  }

 private:
  RealFunction left_;
  RealFunction right_;
};

/// One problem instance:
///   p(x) y'' + q(x) y(x - Delay(x)) + lambda^2 y = 0 on [0,pi/2) U (pi/2,pi],
///   a1 y(0) + a2 y'(0) = 0,  y'(pi) + d y(pi) = 0,
///   gamma1 y(pi/2-0) = delta1 y(pi/2+0),  gamma2 y'(pi/2-0) = delta2 y'(pi/2+0),
/// with p = p1^2 on the left and p2^2 on the right.
struct ProblemSpec {
  double p1 = 1.0;
  double p2 = 1.0;
  double a1 = 0.0;
  double a2 = 1.0;
  double d = 0.0;
  double gamma1 = 1.0;
  double gamma2 = 1.0;
  double delta1 = 1.0;
  double delta2 = 1.0;
  PiecewiseFn q = PiecewiseFn::constant(0.0);
  PiecewiseFn delay = PiecewiseFn::constant(0.0);
};

enum class IssueKind { ZeroCoefficient, NonFinite, NegativeDelay, DelayRangeViolation };

struct ProblemIssue {
  IssueKind kind;
  std::string name;  // offending scalar or function
  double x = 0.0;
  double value = 0.0;  // x - Delay(x), the delay itself, or the scalar

  std::string describe() const;
};

/// Immutable, validated problem. Cheap to copy; safe to share across threads.
class ValidatedProblem {
 public:
  const ProblemSpec& spec() const { return *spec_; }

  double p(Side side) const { return side == Side::Left ? spec_->p1 : spec_->p2; }
  double q(double x, Side side) const { return spec_->q.at(x, side); }
  double delay(double x, Side side) const { return spec_->delay.at(x, side); }

  /// (p1 + p2) / (2 p1 p2), the weight in front of the delay integrals.
  double coupling() const;
  /// Phase rate of the unperturbed characteristic function: pi (p1+p2)/(2 p1 p2).
  double phase_rate() const;
  /// Spacing of consecutive seeds, 2 p1 p2 / (p1 + p2).
  double seed_gap() const;

 private:
  friend ValidatedProblem make_validated(ProblemSpec spec);
  explicit ValidatedProblem(std::shared_ptr<const ProblemSpec> spec)
      : spec_(std::move(spec)) {}

  std::shared_ptr<const ProblemSpec> spec_;
};

using ValidationResult = std::variant<ValidatedProblem, std::vector<ProblemIssue>>;

inline constexpr int kDefaultValidationGrid = 4096;

/// Checks the scalar constraints (p1, p2, a2, gamma1, delta1, delta2 nonzero and
/// every scalar finite) and the delay constraints on a uniform grid of
/// `grid_points` per subinterval. Returns every violation found.
ValidationResult validate_problem(const ProblemSpec& spec,
                                  int grid_points = kDefaultValidationGrid);

/// validate_problem, throwing InvalidProblem with all issues on failure.
ValidatedProblem require_valid(const ProblemSpec& spec,
                               int grid_points = kDefaultValidationGrid);

struct DelayedPoint {
  double s;
  Side region;
};

/// s = x - Delay(x), clamped into the history of x's own region.
DelayedPoint delayed_argument(const ValidatedProblem& problem, double x);

}  // namespace rsl
