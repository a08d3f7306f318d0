#pragma once

#include <cmath>
#include <complex>

namespace jacobi::numerics {

/// Minimal complex number over an arbitrary real scalar (double or Dual).
/// std::complex is only specified for floating-point element types.
template <class T>
struct Cplx {
  T re{};
  T im{};

  constexpr Cplx() = default;
  constexpr Cplx(const T& r) : re(r), im(0.0) {}
  constexpr Cplx(const T& r, const T& i) : re(r), im(i) {}

  static constexpr Cplx i() { return Cplx(T(0.0), T(1.0)); }

  friend constexpr Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
  friend constexpr Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
  friend constexpr Cplx operator-(const Cplx& a) { return {-a.re, -a.im}; }
  friend constexpr Cplx operator*(const Cplx& a, const Cplx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend constexpr Cplx operator/(const Cplx& a, const Cplx& b) {
    const T den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
  }
  friend constexpr Cplx operator*(const Cplx& a, double s) { return {a.re * s, a.im * s}; }
  friend constexpr Cplx operator*(double s, const Cplx& a) { return a * s; }
};

template <class T>
constexpr Cplx<T> conj(const Cplx<T>& z) {
  return {z.re, -z.im};
}

/// |z|^2
template <class T>
constexpr T norm2(const Cplx<T>& z) {
  return z.re * z.re + z.im * z.im;
}

inline std::complex<double> to_std(const Cplx<double>& z) { return {z.re, z.im}; }
inline Cplx<double> from_std(const std::complex<double>& z) { return {z.real(), z.imag()}; }

} // namespace jacobi::numerics
