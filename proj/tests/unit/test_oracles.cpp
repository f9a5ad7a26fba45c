#include <cmath>
#include <random>

#include "doctest.h"
#include "rsl/errors.hpp"
#include "rsl/integrator.hpp"
#include "rsl/oracles.hpp"
#include "rsl/spectrum.hpp"
#include "support.hpp"

using namespace rsl;

namespace {

std::vector<ProblemSpec> qzero_instances() {
  ProblemSpec mixed;
  mixed.p1 = 0.8;
  mixed.p2 = 1.7;
  mixed.a1 = -0.6;
  mixed.a2 = 1.3;
  mixed.d = 0.4;
  mixed.gamma1 = 1.1;
  mixed.gamma2 = -0.5;
  mixed.delta1 = 0.9;
  mixed.delta2 = 2.0;
  ProblemSpec delayed = test::robin_spec(-0.7);
  delayed.delay = PiecewiseFn([](double x) { return 0.2 * x; },
                              [](double x) { return 0.1 * (x - kInterface); });
  return {test::symmetric_spec(), test::robin_spec(1.0), mixed, delayed};
}

double sup_distance(const DenseSolution& grid, const DenseSolution& dense) {
  double worst = 0.0;
  const auto xs = grid.breakpoints();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    worst = std::max(worst, std::abs(grid.values()[i] - dense.eval(xs[i]).y));
  }
  return worst;
}

}  // namespace

TEST_CASE("closed-form theta for q = 0") {
  const auto sym = test::valid(test::symmetric_spec());
  for (double l : {0.3, 1.5, 7.25}) {
    CHECK(exact_theta_qzero(sym, l) == doctest::Approx(-l * std::sin(l * kPi)).epsilon(1e-14));
  }
  ProblemSpec s = test::robin_spec(0.5);
  s.a1 = 0.25;
  const auto p = test::valid(s);
  // lambda = 0: y = a2 - a1 x, Theta = -a1 + d (a2 - a1 pi).
  CHECK(exact_theta_qzero(p, 0.0) == doctest::Approx(-0.25 + 0.5 * (1.0 - 0.25 * kPi)));
  CHECK(std::isfinite(exact_theta_qzero(p, 1e-300)));
  for (const auto& spec : qzero_instances()) {
    const auto q = test::valid(spec);
    for (double l : {0.2, 3.3, 11.0}) {
      CHECK(exact_theta_qzero(q, l) == doctest::Approx(test::qzero_theta(spec, l)).epsilon(1e-12));
    }
  }
}

TEST_CASE("integrator theta matches the closed form at 50 random lambda") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.1, 60.0);
  for (const auto& spec : qzero_instances()) {
    const auto p = test::valid(spec);
    ThetaEvaluator f(p);
    for (int i = 0; i < 50; ++i) {
      const double l = u(rng);
      CHECK(std::abs(f.at_lambda(l) - exact_theta_qzero(p, l)) <= 1e-9 * std::max(1.0, l));
    }
  }
}

TEST_CASE("Picard iteration 0 is the trigonometric part") {
  const auto p = test::valid(test::smooth_spec());
  const double l = 3.0;
  const auto r = picard_solution(p, l, 0);
  CHECK(r.iterations_left == 0);
  const auto xs = r.omega1.breakpoints();
  for (std::size_t i = 0; i < xs.size(); i += 211) {
    const double expected = std::cos(l * xs[i]) - 0.5 / l * std::sin(l * xs[i]);
    CHECK(r.omega1.values()[i] == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("Picard with q = 0 returns the closed form") {
  ProblemSpec s = test::robin_spec(0.3);
  s.a1 = 0.7;
  s.gamma1 = 2.0;
  const auto p = test::valid(s);
  const double l = 4.0;
  const auto r = picard_solution(p, l, 5);
  const auto xs = r.omega1.breakpoints();
  const double y0 = std::cos(l * kInterface) - 0.7 / l * std::sin(l * kInterface);
  const double dy0 = -l * std::sin(l * kInterface) - 0.7 * std::cos(l * kInterface);
  for (std::size_t i = 0; i < xs.size(); i += 311) {
    CHECK(r.omega1.values()[i] ==
          doctest::Approx(std::cos(l * xs[i]) - 0.7 / l * std::sin(l * xs[i])).epsilon(1e-13));
  }
  const auto ys = r.omega2.breakpoints();
  for (std::size_t i = 0; i < ys.size(); i += 311) {
    const double t = ys[i] - kInterface;
    const double expected = 2.0 * y0 * std::cos(l * t) + dy0 / l * std::sin(l * t);
    CHECK(r.omega2.values()[i] == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("Picard agrees with the integrator") {
  const auto p = test::valid(test::smooth_spec());
  for (double l : {2.0, 5.0}) {
    const auto r = picard_solution(p, l, 60);
    const auto w1 = integrate_omega1(p, l);
    const auto w2 = integrate_omega2(p, l, w1);
    CHECK(sup_distance(r.omega1, w1) <= 1e-8);
    CHECK(sup_distance(r.omega2, w2) <= 1e-8);
  }
}

TEST_CASE("Picard changes contract, faster for larger lambda") {
  const auto p = test::valid(test::smooth_spec());
  const auto ratio = [&](double l) {
    const auto r = picard_solution(p, l, 6, {.tolerance = 0.0});
    REQUIRE(r.deltas_left.size() >= 4);
    return r.deltas_left[3] / r.deltas_left[2];
  };
  const double r10 = ratio(10.0), r20 = ratio(20.0);
  CHECK(r10 < 0.5);
  CHECK(r20 < r10);
}

TEST_CASE("Picard failures") {
  ProblemSpec s = test::smooth_spec();
  s.q = PiecewiseFn::constant(1e4);
  CHECK_THROWS_AS(picard_solution(test::valid(s), 1.0, 30), NonConvergence);
  CHECK_THROWS_AS(picard_solution(test::valid(test::smooth_spec()), 0.0, 3), DomainError);
}

TEST_CASE("classical reduction") {
  SUBCASE("q = 0: eigenvalues n") {
    const auto report = classical_reduction_check(test::valid(test::symmetric_spec()), 6);
    REQUIRE(report.rows.size() == 6);
    for (const auto& row : report.rows) {
      CHECK(std::abs(row.toolkit * row.toolkit - row.n * row.n) < 1e-9 * row.n);
      CHECK(std::abs(row.classical - row.n) < 1e-9);
    }
  }
  SUBCASE("q = 1 with Robin ends") {
    ProblemSpec s = test::robin_spec(0.7);
    s.a1 = 0.4;
    s.q = PiecewiseFn::constant(1.0);
    const auto report = classical_reduction_check(test::valid(s), 8);
    CHECK(report.max_difference() <= 1e-8);
  }
  SUBCASE("gamma1 != delta1") {
    ProblemSpec s;
    s.gamma1 = 2.0;
    CHECK_THROWS_AS(classical_reduction_check(test::valid(s)), PreconditionViolated);
  }
  SUBCASE("nonzero delay") {
    CHECK_THROWS_AS(classical_reduction_check(test::valid(test::smooth_spec())),
                    PreconditionViolated);
  }
}

TEST_CASE("shooting theta for q = 0") {
  const auto p = test::valid(test::robin_spec(1.0));
  for (double l : {0.7, 4.2}) {
    CHECK(classical_shooting_theta(p, l, 4096) ==
          doctest::Approx(test::qzero_theta(p.spec(), l)).epsilon(1e-10));
  }
}
