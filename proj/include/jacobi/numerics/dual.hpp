#pragma once

/**
 * @file dual.hpp
 * @brief Forward-mode derivative scalars with a fixed number of partials.
 *
 * `Dual<T, N>` carries a value and N first partials. Nesting
 * (`Dual<Dual<double, N>, N>`) yields second derivatives. Generic code should
 * call math functions unqualified after `using std::sqrt;` etc. so that both
 * `double` and `Dual` resolve through ADL.
 */

#include <array>
#include <cmath>
#include <cstddef>
#include <type_traits>

namespace jacobi::numerics {

template <class T, std::size_t N>
struct Dual {
  T val{};
  std::array<T, N> d{};

  constexpr Dual() = default;
  constexpr Dual(const T& v) : val(v) {}
  constexpr Dual(double v)
    requires(!std::is_same_v<T, double>)
      : val(v) {}
  constexpr Dual(const T& v, const std::array<T, N>& g) : val(v), d(g) {}

  /// Independent variable number `slot` with value v.
  static constexpr Dual variable(const T& v, std::size_t slot) {
    Dual x(v);
    x.d[slot] = T(1.0);
    return x;
  }

  constexpr Dual& operator+=(const Dual& o) {
    val += o.val;
    for (std::size_t i = 0; i < N; ++i) d[i] += o.d[i];
    return *this;
  }
  constexpr Dual& operator-=(const Dual& o) {
    val -= o.val;
    for (std::size_t i = 0; i < N; ++i) d[i] -= o.d[i];
    return *this;
  }
  constexpr Dual& operator*=(const Dual& o) { return *this = *this * o; }
  constexpr Dual& operator/=(const Dual& o) { return *this = *this / o; }

  friend constexpr Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend constexpr Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend constexpr Dual operator-(const Dual& a) {
    Dual r;
    r.val = -a.val;
    for (std::size_t i = 0; i < N; ++i) r.d[i] = -a.d[i];
    return r;
  }
  friend constexpr Dual operator*(const Dual& a, const Dual& b) {
    Dual r;
    r.val = a.val * b.val;
    for (std::size_t i = 0; i < N; ++i) r.d[i] = a.d[i] * b.val + a.val * b.d[i];
    return r;
  }
  friend constexpr Dual operator/(const Dual& a, const Dual& b) {
    Dual r;
    r.val = a.val / b.val;
    const T inv_b2 = T(1.0) / (b.val * b.val);
    for (std::size_t i = 0; i < N; ++i)
      r.d[i] = (a.d[i] * b.val - a.val * b.d[i]) * inv_b2;
    return r;
  }

  // Scalar (double) mixing; lifts through nested levels.
  friend constexpr Dual operator+(Dual a, double b) {
    a.val += b;
    return a;
  }
  friend constexpr Dual operator+(double a, Dual b) { return b + a; }
  friend constexpr Dual operator-(Dual a, double b) {
    a.val -= b;
    return a;
  }
  friend constexpr Dual operator-(double a, const Dual& b) { return -b + a; }
  friend constexpr Dual operator*(Dual a, double b) {
    a.val *= b;
    for (auto& x : a.d) x *= b;
    return a;
  }
  friend constexpr Dual operator*(double a, const Dual& b) { return b * a; }
  friend constexpr Dual operator/(const Dual& a, double b) { return a * (1.0 / b); }
  friend constexpr Dual operator/(double a, const Dual& b) { return Dual(a) / b; }
};

/// Innermost real value of a possibly nested scalar.
constexpr double value(double x) { return x; }
template <class T, std::size_t N>
constexpr double value(const Dual<T, N>& x) {
  return value(x.val);
}

template <class T>
struct is_dual : std::false_type {};
template <class T, std::size_t N>
struct is_dual<Dual<T, N>> : std::true_type {};

// Comparisons look at the value only; derivatives never affect control flow.
template <class T, std::size_t N>
constexpr bool operator<(const Dual<T, N>& a, const Dual<T, N>& b) {
  return value(a) < value(b);
}
template <class T, std::size_t N>
constexpr bool operator>(const Dual<T, N>& a, const Dual<T, N>& b) {
  return value(a) > value(b);
}

namespace detail {
// f(a) with f'(a) = slope, applied through the chain rule.
template <class T, std::size_t N>
constexpr Dual<T, N> chain(const Dual<T, N>& a, const T& fa, const T& slope) {
  Dual<T, N> r;
  r.val = fa;
  for (std::size_t i = 0; i < N; ++i) r.d[i] = slope * a.d[i];
  return r;
}
} // namespace detail

template <class T, std::size_t N>
Dual<T, N> sqrt(const Dual<T, N>& a) {
  using std::sqrt;
  const T s = sqrt(a.val);
  return detail::chain(a, s, T(0.5) / s);
}

template <class T, std::size_t N>
Dual<T, N> exp(const Dual<T, N>& a) {
  using std::exp;
  const T e = exp(a.val);
  return detail::chain(a, e, e);
}

template <class T, std::size_t N>
Dual<T, N> log(const Dual<T, N>& a) {
  using std::log;
  return detail::chain(a, log(a.val), T(1.0) / a.val);
}

template <class T, std::size_t N>
Dual<T, N> sin(const Dual<T, N>& a) {
  using std::cos;
  using std::sin;
  return detail::chain(a, sin(a.val), cos(a.val));
}

template <class T, std::size_t N>
Dual<T, N> cos(const Dual<T, N>& a) {
  using std::cos;
  using std::sin;
  return detail::chain(a, cos(a.val), -sin(a.val));
}

template <class T, std::size_t N>
Dual<T, N> atan2(const Dual<T, N>& y, const Dual<T, N>& x) {
  using std::atan2;
  Dual<T, N> r;
  r.val = atan2(y.val, x.val);
  const T inv = T(1.0) / (x.val * x.val + y.val * y.val);
  for (std::size_t i = 0; i < N; ++i) r.d[i] = (x.val * y.d[i] - y.val * x.d[i]) * inv;
  return r;
}

template <class T, std::size_t N>
Dual<T, N> abs(const Dual<T, N>& a) {
  return value(a) < 0.0 ? -a : a;
}

/// Integer power by repeated multiplication, valid for any scalar.
template <class S>
constexpr S ipow(const S& x, int n) {
  if (n < 0) return S(1.0) / ipow(x, -n);
  S r(1.0);
  for (int i = 0; i < n; ++i) r = r * x;
  return r;
}

template <class S>
constexpr S sq(const S& x) {
  return x * x;
}

} // namespace jacobi::numerics
