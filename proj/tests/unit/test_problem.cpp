#include <cmath>

#include "doctest.h"
#include "rsl/errors.hpp"
#include "rsl/problem.hpp"
#include "support.hpp"

using namespace rsl;

namespace {

std::vector<ProblemIssue> issues_of(const ProblemSpec& s) {
  auto result = validate_problem(s);
  auto* issues = std::get_if<std::vector<ProblemIssue>>(&result);
  return issues ? *issues : std::vector<ProblemIssue>{};
}

bool has(const std::vector<ProblemIssue>& issues, IssueKind kind, const std::string& name) {
  for (const auto& i : issues) {
    if (i.kind == kind && i.name == name) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("zero a2 is reported by name") {
  ProblemSpec s;
  s.a2 = 0.0;
  const auto issues = issues_of(s);
  CHECK(has(issues, IssueKind::ZeroCoefficient, "a2"));
  CHECK_THROWS_AS(require_valid(s), InvalidProblem);
}

TEST_CASE("every required nonzero scalar is checked and all issues are returned") {
  ProblemSpec s;
  s.p1 = 0;
  s.gamma1 = 0;
  s.delta1 = 0;
  s.delta2 = 0;
  s.d = NAN;
  const auto issues = issues_of(s);
  CHECK(has(issues, IssueKind::ZeroCoefficient, "p1"));
  CHECK(has(issues, IssueKind::ZeroCoefficient, "gamma1"));
  CHECK(has(issues, IssueKind::ZeroCoefficient, "delta1"));
  CHECK(has(issues, IssueKind::ZeroCoefficient, "delta2"));
  CHECK(has(issues, IssueKind::NonFinite, "d"));
}

TEST_CASE("a1 = 0 and d = 0 are accepted") {
  CHECK(issues_of(test::symmetric_spec()).empty());
}

TEST_CASE("delay x/2 on the left passes") {
  ProblemSpec s;
  s.delay = PiecewiseFn([](double x) { return x / 2; }, [](double) { return 0.0; });
  CHECK(issues_of(s).empty());
}

TEST_CASE("constant delay 1 on the right violates the range") {
  ProblemSpec s;
  s.delay = PiecewiseFn([](double) { return 0.0; }, [](double) { return 1.0; });
  const auto issues = issues_of(s);
  REQUIRE_FALSE(issues.empty());
  bool near_16 = false;
  for (const auto& i : issues) {
    CHECK(i.kind == IssueKind::DelayRangeViolation);
    CHECK(i.x >= kInterface);  // the interface counts as the right-side limit
    CHECK(i.value == doctest::Approx(i.x - 1.0));
    if (std::abs(i.x - 1.6) < 1e-3) near_16 = true;
  }
  CHECK(near_16);
}

TEST_CASE("negative delay is reported") {
  ProblemSpec s;
  s.delay = PiecewiseFn::constant(-0.1);
  CHECK(has(issues_of(s), IssueKind::NegativeDelay, "delay"));
}

TEST_CASE("validation grid must have two points") {
  CHECK_THROWS_AS(validate_problem(ProblemSpec{}, 1), ConfigError);
}

TEST_CASE("validation is idempotent") {
  const auto p = test::valid(test::smooth_spec());
  CHECK(issues_of(p.spec()).empty());
}

TEST_CASE("piecewise evaluation needs a side at the interface") {
  const PiecewiseFn f([](double) { return 1.0; }, [](double) { return 2.0; });
  CHECK_THROWS_AS(f(kInterface), DomainError);
  CHECK(f.at(kInterface, Side::Left) == 1.0);
  CHECK(f.at(kInterface, Side::Right) == 2.0);
  CHECK(f(1.0) == 1.0);
  CHECK(f(2.0) == 2.0);
  CHECK_THROWS_AS(f(-0.1), DomainError);
  CHECK_THROWS_AS(f(4.0), DomainError);
}

TEST_CASE("delayed_argument examples") {
  ProblemSpec half;
  half.delay = PiecewiseFn([](double x) { return x / 2; }, [](double) { return 0.0; });
  const auto a = delayed_argument(test::valid(half), 1.0);
  CHECK(a.s == doctest::Approx(0.5));
  CHECK(a.region == Side::Left);

  const auto b = delayed_argument(test::valid(ProblemSpec{}), 2.0);
  CHECK(b.s == 2.0);
  CHECK(b.region == Side::Right);

  ProblemSpec c;
  c.delay = PiecewiseFn([](double) { return 0.0; }, [](double) { return 0.1; });
  // 0.1 on the right is legal: x - 0.1 >= pi/2 fails only on (pi/2, pi/2 + 0.1).
  auto result = validate_problem(c);
  REQUIRE(std::holds_alternative<std::vector<ProblemIssue>>(result));
  c.delay = PiecewiseFn([](double) { return 0.0; },
                        [](double x) { return std::min(0.1, x - kInterface); });
  const auto r = delayed_argument(test::valid(c), 3.0);
  CHECK(r.s == doctest::Approx(2.9));
  CHECK(r.region == Side::Right);
}

TEST_CASE("delayed_argument stays on its own side and never exceeds x") {
  const auto p = test::valid(test::smooth_spec());
  for (int i = 0; i <= 400; ++i) {
    const double x = kPi * i / 400.0;
    if (x == kInterface) continue;
    const auto a = delayed_argument(p, x);
    CHECK(a.s <= x);
    if (x < kInterface) {
      CHECK(a.region == Side::Left);
      CHECK(a.s >= 0.0);
    } else {
      CHECK(a.region == Side::Right);
      CHECK(a.s >= kInterface);
    }
  }
  CHECK_THROWS_AS(delayed_argument(p, kInterface), DomainError);
  CHECK_THROWS_AS(delayed_argument(p, 3.5), DomainError);
}

TEST_CASE("seed geometry") {
  ProblemSpec s;
  s.p2 = 2.0;
  const auto p = test::valid(s);
  CHECK(p.seed_gap() == doctest::Approx(4.0 / 3.0));
  CHECK(p.coupling() == doctest::Approx(0.75));
  CHECK(p.phase_rate() == doctest::Approx(0.75 * kPi));
}
