#pragma once

#include <span>
#include <vector>

namespace rsl {

/// Gauss-Legendre rule on [-1, 1], nodes computed by Newton iteration on P_n.
class GaussLegendre {
 public:
  explicit GaussLegendre(int points);

  /// Shared 16-point rule.
  static const GaussLegendre& sixteen();

  int size() const { return static_cast<int>(nodes_.size()); }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Composite rule: `panels` equal panels on [a, b]. F may return double or
/// std::complex<double>.
template <class F>
auto integrate_panels(F&& f, double a, double b, int panels,
                      const GaussLegendre& rule = GaussLegendre::sixteen()) -> decltype(f(a)) {
  using Value = decltype(f(a));
  Value total{};
  if (panels <= 0 || a == b) return total;
  const double width = (b - a) / panels;
  const auto nodes = rule.nodes();
  const auto weights = rule.weights();
  for (int k = 0; k < panels; ++k) {
    const double mid = a + (k + 0.5) * width;
    Value panel{};
    for (int i = 0; i < rule.size(); ++i) panel += weights[i] * f(mid + 0.5 * width * nodes[i]);
    total += 0.5 * width * panel;
  }
  return total;
}

}  // namespace rsl
