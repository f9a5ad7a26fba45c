#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rsl/problem.hpp"

namespace rsl {

struct DenseValue {
  double y;
  double dy;
};

/// Piecewise-polynomial trajectory of one region's solution.
///
/// Nodes carry y, y' and y''. Between nodes y is a cubic Hermite interpolant
/// of (y, y') and y' a cubic Hermite interpolant of (y', y''); with
/// interpolation order 5 both come from the quintic Hermite interpolant of
/// (y, y', y''). Values at nodes are returned exactly.
class DenseSolution {
 public:
  DenseSolution(Side region, double lambda_sq, int interpolation_order,
                std::vector<double> x, std::vector<double> y, std::vector<double> dy,
                std::vector<double> ddy);

  Side region() const { return region_; }
  double lambda_sq() const { return lambda_sq_; }
  int interpolation_order() const { return order_; }

  std::span<const double> breakpoints() const { return x_; }
  std::span<const double> values() const { return y_; }
  std::span<const double> derivatives() const { return dy_; }
  std::span<const double> second_derivatives() const { return ddy_; }
  std::size_t segment_count() const { return x_.size() - 1; }

  double front() const { return x_.front(); }
  double back() const { return x_.back(); }
  DenseValue at_front() const { return {y_.front(), dy_.front()}; }
  DenseValue at_back() const { return {y_.back(), dy_.back()}; }

  /// Throws OutOfRange outside [front(), back()].
  DenseValue eval(double x) const;

 private:
  std::size_t segment_of(double x) const;

  Side region_;
  double lambda_sq_;
  int order_;
  bool uniform_ = false;
  double step_ = 0.0;
  std::vector<double> x_, y_, dy_, ddy_;
};

inline DenseValue dense_eval(const DenseSolution& sol, double x) { return sol.eval(x); }

namespace hermite {

/// Cubic Hermite value on a segment of width h at relative position t in [0, 1].
inline double cubic(double t, double h, double f0, double m0, double f1, double m1) {
  const double u = 1.0 - t;
  return u * u * ((1.0 + 2.0 * t) * f0 + t * h * m0) + t * t * ((3.0 - 2.0 * t) * f1 - u * h * m1);
}

/// Quintic Hermite value from value, first and second derivative at both ends.
inline double quintic(double t, double h, double f0, double m0, double c0, double f1,
                      double m1, double c1) {
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  const double h0 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
  const double h1 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
  const double h2 = 0.5 * (t2 - 3.0 * t3 + 3.0 * t4 - t5);
  const double h3 = 0.5 * (t3 - 2.0 * t4 + t5);
  const double h4 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
  const double h5 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
  return h0 * f0 + h * (h1 * m0 + h4 * m1) + h * h * (h2 * c0 + h3 * c1) + h5 * f1;
}

/// Derivative (with respect to x) of the quintic Hermite interpolant.
inline double quintic_slope(double t, double h, double f0, double m0, double c0, double f1,
                            double m1, double c1) {
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t;
  const double d0 = -30.0 * t2 + 60.0 * t3 - 30.0 * t4;
  const double d1 = 1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4;
  const double d2 = 0.5 * (2.0 * t - 9.0 * t2 + 12.0 * t3 - 5.0 * t4);
  const double d3 = 0.5 * (3.0 * t2 - 8.0 * t3 + 5.0 * t4);
  const double d4 = -12.0 * t2 + 28.0 * t3 - 15.0 * t4;
  return (d0 * (f0 - f1)) / h + d1 * m0 + d4 * m1 + h * (d2 * c0 + d3 * c1);
}

}  // namespace hermite

}  // namespace rsl
