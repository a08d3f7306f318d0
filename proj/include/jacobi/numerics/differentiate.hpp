#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "jacobi/errors.hpp"
#include "jacobi/numerics/dual.hpp"

namespace jacobi::numerics {

enum class DiffMode { dual, finite_difference };

/// Relative central-difference step, scaled by max(1, |x_i|).
inline constexpr double kRelativeStep = 1e-6;

namespace detail {
inline void require_finite(double v, const char* where) {
  if (!std::isfinite(v)) throw NonFinite(std::string("non-finite value in ") + where);
}
} // namespace detail

/// Seed every coordinate of x as an independent variable.
template <std::size_t N>
std::array<Dual<double, N>, N> seed(const std::array<double, N>& x) {
  std::array<Dual<double, N>, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = Dual<double, N>::variable(x[i], i);
  return out;
}

/// Gradient of a scalar function of N reals. `f` must be callable on
/// `std::array<S, N>` for S = double and (in dual mode) S = Dual<double, N>.
template <std::size_t N, class F>
std::array<double, N> diff(F&& f, const std::array<double, N>& x,
                           DiffMode mode = DiffMode::dual) {
  std::array<double, N> g{};
  if (mode == DiffMode::dual) {
    const Dual<double, N> y = f(seed(x));
    detail::require_finite(y.val, "diff");
    for (std::size_t i = 0; i < N; ++i) {
      detail::require_finite(y.d[i], "diff");
      g[i] = y.d[i];
    }
    return g;
  }
  for (std::size_t i = 0; i < N; ++i) {
    const double h = kRelativeStep * std::max(1.0, std::abs(x[i]));
    auto xp = x;
    auto xm = x;
    xp[i] += h;
    xm[i] -= h;
    const double fp = f(xp);
    const double fm = f(xm);
    detail::require_finite(fp, "diff");
    detail::require_finite(fm, "diff");
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

/// Jacobian J[i][j] = d f_i / d x_j of a map R^N -> R^M, via dual numbers.
template <std::size_t M, std::size_t N, class F>
std::array<std::array<double, N>, M> jacobian(F&& f, const std::array<double, N>& x) {
  const std::array<Dual<double, N>, M> y = f(seed(x));
  std::array<std::array<double, N>, M> J{};
  for (std::size_t i = 0; i < M; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      detail::require_finite(y[i].d[j], "jacobian");
      J[i][j] = y[i].d[j];
    }
  return J;
}

/// Dense Hessian of a scalar function through nested duals.
template <std::size_t N, class F>
std::array<std::array<double, N>, N> hessian(F&& f, const std::array<double, N>& x) {
  using Inner = Dual<double, N>;
  using Outer = Dual<Inner, N>;
  std::array<Outer, N> xs;
  for (std::size_t i = 0; i < N; ++i) {
    xs[i] = Outer(Inner::variable(x[i], i));
    xs[i].d[i] = Inner(1.0);
  }
  const Outer y = f(xs);
  std::array<std::array<double, N>, N> H{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      detail::require_finite(y.d[i].d[j], "hessian");
      H[i][j] = y.d[i].d[j];
    }
  return H;
}

} // namespace jacobi::numerics
