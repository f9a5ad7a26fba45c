#include "rsl/dense_solution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rsl/errors.hpp"

namespace rsl {

DenseSolution::DenseSolution(Side region, double lambda_sq, int interpolation_order,
                             std::vector<double> x, std::vector<double> y,
                             std::vector<double> dy, std::vector<double> ddy)
    : region_(region),
      lambda_sq_(lambda_sq),
      order_(interpolation_order),
      x_(std::move(x)),
      y_(std::move(y)),
      dy_(std::move(dy)),
      ddy_(std::move(ddy)) {
  if (x_.size() < 2 || y_.size() != x_.size() || dy_.size() != x_.size() ||
      ddy_.size() != x_.size()) {
    throw ConfigError("dense solution needs at least two consistent nodes");
  }
  if (order_ != 3 && order_ != 5) throw ConfigError("interpolation order must be 3 or 5");
  const double h = (x_.back() - x_.front()) / static_cast<double>(segment_count());
  uniform_ = true;
  for (std::size_t i = 1; i < x_.size(); ++i) {
    if (!(x_[i] > x_[i - 1])) throw ConfigError("breakpoints must be strictly ascending");
    if (std::abs((x_[i] - x_[i - 1]) - h) > 1e-9 * h) uniform_ = false;
  }
  step_ = h;
}

std::size_t DenseSolution::segment_of(double x) const {
  const std::size_t last = segment_count() - 1;
  std::size_t k;
  if (uniform_) {
    const double pos = (x - x_.front()) / step_;
    k = pos <= 0.0 ? 0 : std::min(static_cast<std::size_t>(pos), last);
    // Rounding in pos can land one segment off.
    if (k > 0 && x < x_[k]) --k;
    if (k < last && x > x_[k + 1]) ++k;
  } else {
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    k = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    k = std::min(k, last);
  }
  return k;
}

DenseValue DenseSolution::eval(double x) const {
  if (!(x >= x_.front() && x <= x_.back())) {
    std::ostringstream os;
    os.precision(17);
    os << "x = " << x << " outside [" << x_.front() << ", " << x_.back() << "]";
    throw OutOfRange(os.str());
  }
  const std::size_t k = segment_of(x);
  if (x == x_[k]) return {y_[k], dy_[k]};
  if (x == x_[k + 1]) return {y_[k + 1], dy_[k + 1]};
  const double h = x_[k + 1] - x_[k];
  const double t = (x - x_[k]) / h;
  if (order_ == 5) {
    return {hermite::quintic(t, h, y_[k], dy_[k], ddy_[k], y_[k + 1], dy_[k + 1], ddy_[k + 1]),
            hermite::quintic_slope(t, h, y_[k], dy_[k], ddy_[k], y_[k + 1], dy_[k + 1],
                                   ddy_[k + 1])};
  }
  return {hermite::cubic(t, h, y_[k], dy_[k], y_[k + 1], dy_[k + 1]),
          hermite::cubic(t, h, dy_[k], ddy_[k], dy_[k + 1], ddy_[k + 1])};
}

}  // namespace rsl
