#pragma once

#include <cmath>
#include <limits>
#include <utility>

namespace rsl {

struct RootResult {
  double root;
  double value;  // f(root)
  double lo, hi;  // last sign-change bracket around root
  int evaluations;
};

/// Refines a sign-change bracket [lo, hi] (flo * fhi <= 0): a fixed number of
/// bisection steps, then secant steps kept inside the bracket. Stops when a
/// step is below `xtol`, the bracket is narrower than `xtol`, or f hits zero.
template <class F>
RootResult bisect_secant(F&& f, double lo, double flo, double hi, double fhi,
                         int bisection_steps, double xtol, int max_iterations = 100) {
  RootResult out{lo, flo, lo, hi, 0};
  if (flo == 0.0) return {lo, 0.0, lo, lo, 0};
  if (fhi == 0.0) return {hi, 0.0, hi, hi, 0};
  const auto evaluate = [&](double x) {
    ++out.evaluations;
    return f(x);
  };
  const auto narrow = [&](double x, double fx) {
    if ((fx < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
  };
  for (int i = 0; i < bisection_steps && hi - lo > xtol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = evaluate(mid);
    if (fm == 0.0) return {mid, 0.0, mid, mid, out.evaluations};
    narrow(mid, fm);
  }
  // Secant from the bracket ends, then from the two latest iterates.
  double x0 = lo, f0 = flo, x1 = hi, f1 = fhi;
  if (std::abs(f0) < std::abs(f1)) {
    std::swap(x0, x1);
    std::swap(f0, f1);
  }
  for (int it = 0; it < max_iterations; ++it) {
    double x2 = f1 != f0 ? x1 - f1 * (x1 - x0) / (f1 - f0) : 0.5 * (lo + hi);
    if (!(x2 > lo && x2 < hi)) x2 = 0.5 * (lo + hi);
    const double f2 = evaluate(x2);
    const double step = std::abs(x2 - x1);
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = f2;
    if (f2 == 0.0) return {x2, 0.0, x2, x2, out.evaluations};
    narrow(x2, f2);
    if (step <= xtol || hi - lo <= xtol) break;
  }
  out.root = x1;
  out.value = f1;
  out.lo = lo;
  out.hi = hi;
  return out;
}

/// Plain bisection to an absolute tolerance.
template <class F>
double bisect(F&& f, double lo, double hi, double xtol) {
  double flo = f(lo);
  while (hi - lo > xtol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace rsl
