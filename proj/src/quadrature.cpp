#include "rsl/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "rsl/errors.hpp"

namespace rsl {

GaussLegendre::GaussLegendre(int points) {
  if (points < 1) throw ConfigError("Gauss-Legendre rule needs at least one point");
  nodes_.resize(points);
  weights_.resize(points);
  if (points == 1) {
    nodes_[0] = 0.0;
    weights_[0] = 2.0;
    return;
  }
  const int half = (points + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi's initial guess, then Newton on the three-term recurrence.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= points; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      derivative = points * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / derivative;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
    nodes_[i] = -x;
    nodes_[points - 1 - i] = x;
    weights_[i] = w;
    weights_[points - 1 - i] = w;
  }
}

const GaussLegendre& GaussLegendre::sixteen() {
  static const GaussLegendre rule(16);
  return rule;
}

}  // namespace rsl
