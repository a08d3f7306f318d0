#pragma once

#include <algorithm>
#include <cmath>

#include "jacobi/errors.hpp"

namespace jacobi::numerics {

/// Real cubic c3 r^3 + c2 r^2 + c1 r + c0 with c3 != 0.
struct Cubic {
  double c3 = 1.0;
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;

  constexpr double operator()(double r) const { return ((c3 * r + c2) * r + c1) * r + c0; }
  constexpr double derivative(double r) const { return (3.0 * c3 * r + 2.0 * c2) * r + c1; }

  /// Discriminant 18abcd - 4b^3 d + b^2 c^2 - 4ac^3 - 27a^2 d^2; > 0 means three real roots.
  constexpr double discriminant() const {
    const double a = c3, b = c2, c = c1, d = c0;
    return 18.0 * a * b * c * d - 4.0 * b * b * b * d + b * b * c * c - 4.0 * a * c * c * c -
           27.0 * a * a * d * d;
  }
};

enum class RootChoice { unique, largest };

/// Newton iterations from r, stopping once the step no longer shrinks.
inline double newton_polish(const Cubic& f, double r, int max_iter = 4) {
  for (int i = 0; i < max_iter; ++i) {
    const double fp = f.derivative(r);
    if (fp == 0.0) break;
    const double step = f(r) / fp;
    r -= step;
    if (std::abs(step) <= 1e-17 * std::max(1.0, std::abs(r))) break;
  }
  return r;
}

/// The real root of a cubic by Cardano's nested radicals, Newton-polished.
/// With RootChoice::unique a cubic with three distinct real roots is an error;
/// RootChoice::largest disambiguates through the trigonometric form.
inline double cardano_real_root(const Cubic& f, RootChoice choice = RootChoice::unique) {
  if (f.c3 == 0.0) throw DomainViolation("leading coefficient is zero");
  const double b = f.c2 / f.c3, c = f.c1 / f.c3, d = f.c0 / f.c3;
  // r = t - b/3 gives t^3 + p t + q = 0.
  const double p = c - b * b / 3.0;
  const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
  const double shift = -b / 3.0;
  const double inner = q * q / 4.0 + p * p * p / 27.0;
  double t;
  if (inner >= 0.0) {
    const double s = std::sqrt(inner);
    t = std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s);
  } else {
    if (choice == RootChoice::unique) throw ThreeRealRoots("cubic has three real roots");
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double phi = std::acos(3.0 * q / (p * m)) / 3.0;
    t = m * std::cos(phi);
  }
  return newton_polish(f, t + shift);
}

/// Plain bisection on [lo, hi]; f(lo) and f(hi) must differ in sign.
template <class F>
double bisect(F&& f, double lo, double hi, double tol = 1e-15, int max_iter = 200) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  if ((flo > 0.0) == (f(hi) > 0.0)) throw DomainViolation("bisect: no sign change");
  for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

} // namespace jacobi::numerics
