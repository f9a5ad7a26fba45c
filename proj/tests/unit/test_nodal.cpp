#include <cmath>

#include "doctest.h"
#include "rsl/errors.hpp"
#include "rsl/integrator.hpp"
#include "rsl/nodal.hpp"
#include "support.hpp"

using namespace rsl;

TEST_CASE("nodes of cos 4x") {
  const auto p = test::valid(test::symmetric_spec());
  const auto nodes = numeric_nodes(p, 4.0);
  REQUIRE(nodes.size() == 4);
  const auto all = nodes.all();
  for (int j = 0; j < 4; ++j) CHECK(std::abs(all[j] - (2 * j + 1) * kPi / 8) < 1e-10);
  CHECK(nodes.left.size() == 2);
  CHECK(nodes.right.size() == 2);
}

TEST_CASE("nodes interlace with extrema") {
  const auto p = test::valid(test::smooth_spec());
  const auto s = compute_spectrum(p, 8);
  const double lambda = s.at(8).root;
  const auto nodes = numeric_nodes(p, lambda);
  const auto w1 = integrate_omega1(p, lambda);
  const auto w2 = integrate_omega2(p, lambda, w1);
  const auto check_side = [](const DenseSolution& w, const std::vector<double>& xs) {
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      // y' changes sign exactly once between consecutive zeros of y.
      int changes = 0;
      double prev = w.eval(xs[i]).dy;
      for (int k = 1; k <= 200; ++k) {
        const double v = w.eval(xs[i] + (xs[i + 1] - xs[i]) * k / 200.0).dy;
        if ((v < 0) != (prev < 0)) ++changes;
        prev = v;
      }
      CHECK(changes == 1);
    }
  };
  check_side(w1, nodes.left);
  check_side(w2, nodes.right);
}

TEST_CASE("symmetric instance: formula nodes are exact") {
  const auto p = test::valid(test::symmetric_spec());
  const auto s = compute_spectrum(p, 16);
  for (int n : {4, 8, 16}) {
    const auto t = compare_nodes(p, n, s);
    CHECK(t.rows.size() == static_cast<std::size_t>(n));
    CHECK(t.matched() == static_cast<std::size_t>(n));
    CHECK(t.max_abs_error() <= 1e-9);
    CHECK_FALSE(t.split_mismatch);
    CHECK(t.unmatched_predictions.empty());
  }
  CHECK_THROWS_AS(compare_nodes(p, 3, s), IndexOutOfRange);
  CHECK_THROWS_AS(compare_nodes(p, 17, s), IndexOutOfRange);
}

TEST_CASE("node counts grow with n") {
  const auto p = test::valid(test::smooth_spec());
  const auto s = compute_spectrum(p, 40);
  std::size_t previous = 0;
  for (int n = 4; n <= 40; ++n) {
    const auto nodes = numeric_nodes(p, s.at(n).root);
    CHECK(nodes.size() >= previous);
    CHECK(std::abs(static_cast<int>(nodes.size()) - n) <= 1);
    previous = nodes.size();
  }
}

TEST_CASE("smooth gated instance: pairing and sides") {
  const auto p = test::valid(test::smooth_spec());
  const auto s = compute_spectrum(p, 32);
  for (int n : {12, 20, 32}) {
    const auto t = compare_nodes(p, n, s);
    CHECK(t.unmatched_predictions.empty());
    CHECK(t.matched() == static_cast<std::size_t>(n));
    double previous = 0.0;
    for (const auto& row : t.rows) {
      CHECK(row.x_numeric > previous);
      previous = row.x_numeric;
      if (row.side == Side::Left) CHECK(row.x_numeric < kInterface);
      if (row.side == Side::Right) CHECK(row.x_numeric > kInterface);
    }
  }
}

TEST_CASE("verification re-solve moves nodes by less than 1e-9") {
  const auto p = test::valid(test::smooth_spec());
  const auto e = find_eigenvalue(p, 16);
  NodalConfig cfg;
  cfg.verify = true;
  const auto nodes = numeric_nodes(p, e.root, cfg);
  REQUIRE(nodes.verification_shift.has_value());
  CHECK(*nodes.verification_shift < 1e-9);
}

TEST_CASE("nodal config is validated") {
  const auto p = test::valid(test::symmetric_spec());
  NodalConfig cfg;
  cfg.step_multiplier = 0;
  CHECK_THROWS_AS(numeric_nodes(p, 4.0, cfg), ConfigError);
}
