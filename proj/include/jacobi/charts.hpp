#pragma once

/**
 * @file charts.hpp
 * @brief Coordinate atlas of the Siegel-Jacobi disk, upper half-plane and
 * their extensions, with the one-forms A and B.
 *
 * Real coordinate orderings (fixed per chart):
 *   disk_wz     (Re w, Im w, Re z, Im z)
 *   disk_weta   (Re w, Im w, Re eta, Im eta)
 *   uhp_vu      (Re v, Im v, Re u, Im u)      v = tau, u = z
 *   xypq        (x, y, p, q)
 *   xyxirho     (x, y, xi, rho)
 *   xychipsi    (x, y, chi, psi)
 *   uhp_vuk     (Re v, Im v, Re u, Im u, kappa)
 *   xyxirhok    (x, y, xi, rho, kappa)
 *   xypqk       (x, y, p, q, kappa)
 *   xythetapqk  (x, y, theta, p, q, kappa)
 */

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "jacobi/errors.hpp"
#include "jacobi/numerics/complex.hpp"
#include "jacobi/numerics/dual.hpp"

namespace jacobi {

/// Upper bound on chart dimension; coordinate arrays carry this many slots.
inline constexpr std::size_t kMaxDim = 6;

template <class T>
using Coords = std::array<T, kMaxDim>;

using Complex = std::complex<double>;

/// Margin for the strict domain inequalities |w| < 1 and Im v > 0.
inline constexpr double kDomainMargin = 1e-14;

enum class Chart { disk_wz, disk_weta, uhp_vu, xypq, xyxirho, xychipsi, uhp_vuk, xyxirhok, xypqk, xythetapqk };

inline constexpr std::array<Chart, 10> kAllCharts = {
    Chart::disk_wz, Chart::disk_weta, Chart::uhp_vu,   Chart::xypq,  Chart::xyxirho,
    Chart::xychipsi, Chart::uhp_vuk,  Chart::xyxirhok, Chart::xypqk, Chart::xythetapqk};

inline const char* chart_name(Chart c) {
  switch (c) {
    case Chart::disk_wz: return "disk_wz";
    case Chart::disk_weta: return "disk_weta";
    case Chart::uhp_vu: return "uhp_vu";
    case Chart::xypq: return "xypq";
    case Chart::xyxirho: return "xyxirho";
    case Chart::xychipsi: return "xychipsi";
    case Chart::uhp_vuk: return "uhp_vuk";
    case Chart::xyxirhok: return "xyxirhok";
    case Chart::xypqk: return "xypqk";
    case Chart::xythetapqk: return "xythetapqk";
  }
  throw UnknownChart("unnamed chart");
}

inline Chart chart_from_name(const std::string& name) {
  for (Chart c : kAllCharts)
    if (name == chart_name(c)) return c;
  throw UnknownChart("unknown chart '" + name + "'");
}

inline std::size_t chart_dim(Chart c) {
  switch (c) {
    case Chart::uhp_vuk:
    case Chart::xyxirhok:
    case Chart::xypqk: return 5;
    case Chart::xythetapqk: return 6;
    default: return 4;
  }
}

inline std::vector<std::string> coordinate_names(Chart c) {
  switch (c) {
    case Chart::disk_wz: return {"Re w", "Im w", "Re z", "Im z"};
    case Chart::disk_weta: return {"Re w", "Im w", "Re eta", "Im eta"};
    case Chart::uhp_vu: return {"Re v", "Im v", "Re u", "Im u"};
    case Chart::xypq: return {"x", "y", "p", "q"};
    case Chart::xyxirho: return {"x", "y", "xi", "rho"};
    case Chart::xychipsi: return {"x", "y", "chi", "psi"};
    case Chart::uhp_vuk: return {"Re v", "Im v", "Re u", "Im u", "kappa"};
    case Chart::xyxirhok: return {"x", "y", "xi", "rho", "kappa"};
    case Chart::xypqk: return {"x", "y", "p", "q", "kappa"};
    case Chart::xythetapqk: return {"x", "y", "theta", "p", "q", "kappa"};
  }
  throw UnknownChart("unnamed chart");
}

/// Whether real coordinates lie in the chart's domain (|w| < 1 or y > 0).
template <class T>
bool in_chart_domain(Chart c, const Coords<T>& x) {
  using numerics::value;
  if (c == Chart::disk_wz || c == Chart::disk_weta) {
    const double w2 = value(x[0]) * value(x[0]) + value(x[1]) * value(x[1]);
    return w2 < (1.0 - kDomainMargin) * (1.0 - kDomainMargin);
  }
  return value(x[1]) > kDomainMargin;
}

// ---------------------------------------------------------------------------
// Points

struct DiskPoint {
  Complex w, z;

  DiskPoint(Complex w_, Complex z_) : w(w_), z(z_) {
    if (!(std::abs(w) < 1.0 - kDomainMargin)) throw DomainViolation("disk point needs |w| < 1");
  }
  /// P = 1 - |w|^2
  double P() const { return 1.0 - std::norm(w); }
};

struct UhpPoint {
  Complex v, u;

  UhpPoint(Complex v_, Complex u_) : v(v_), u(u_) {
    if (!(v.imag() > kDomainMargin)) throw DomainViolation("half-plane point needs Im v > 0");
  }
  double x() const { return v.real(); }
  double y() const { return v.imag(); }
  double xi() const { return u.real(); }
  double rho() const { return u.imag(); }
  double p() const { return u.imag() / v.imag(); }
  double q() const { return (std::conj(u) * v).imag() / v.imag(); }
  double chi() const { return q(); }
  double psi() const { return p(); }
};

struct ExtUhpPoint {
  double x = 0.0, y = 1.0, p = 0.0, q = 0.0, kappa = 0.0;

  ExtUhpPoint() = default;
  ExtUhpPoint(double x_, double y_, double p_, double q_, double kappa_)
      : x(x_), y(y_), p(p_), q(q_), kappa(kappa_) {
    if (!(y > kDomainMargin)) throw DomainViolation("extended half-plane point needs y > 0");
  }
};

/// A point tagged with its chart; only the first chart_dim() coordinates are used.
struct ChartPoint {
  Chart chart = Chart::xypq;
  Coords<double> coords{};

  ChartPoint() = default;
  ChartPoint(Chart c, const std::vector<double>& x) : chart(c) {
    if (x.size() != chart_dim(c))
      throw IncompatibleChart(std::string("chart ") + chart_name(c) + " needs " +
                              std::to_string(chart_dim(c)) + " coordinates");
    for (std::size_t i = 0; i < x.size(); ++i) coords[i] = x[i];
    if (!in_chart_domain(c, coords)) throw DomainViolation(std::string("point outside chart ") + chart_name(c));
  }
  ChartPoint(Chart c, const Coords<double>& x) : chart(c), coords(x) {
    if (!in_chart_domain(c, coords)) throw DomainViolation(std::string("point outside chart ") + chart_name(c));
  }

  std::size_t dim() const { return chart_dim(chart); }
  std::vector<double> values() const { return {coords.begin(), coords.begin() + static_cast<long>(dim())}; }
};

inline void to_json(nlohmann::json& j, const ChartPoint& p) {
  j = nlohmann::json{{"chart", chart_name(p.chart)}, {"coords", p.values()}};
}
inline void from_json(const nlohmann::json& j, ChartPoint& p) {
  p = ChartPoint(chart_from_name(j.at("chart").get<std::string>()), j.at("coords").get<std::vector<double>>());
}

// ---------------------------------------------------------------------------
// Transforms over an arbitrary real scalar (double or Dual)

namespace transforms {

using numerics::Cplx;

/// Partial Cayley transform, disk -> half-plane: v = i(1+w)/(1-w), u = z/(1-w).
template <class T>
std::pair<Cplx<T>, Cplx<T>> disk_to_uhp(const Cplx<T>& w, const Cplx<T>& z) {
  const Cplx<T> one(T(1.0)), i = Cplx<T>::i();
  return {i * (one + w) / (one - w), z / (one - w)};
}

/// Inverse: w = (v-i)/(v+i), z = 2iu/(v+i).
template <class T>
std::pair<Cplx<T>, Cplx<T>> uhp_to_disk(const Cplx<T>& v, const Cplx<T>& u) {
  const Cplx<T> i = Cplx<T>::i();
  return {(v - i) / (v + i), 2.0 * i * u / (v + i)};
}

/// FC: z = eta - w conj(eta).
template <class T>
Cplx<T> fc(const Cplx<T>& w, const Cplx<T>& eta) {
  return eta - w * numerics::conj(eta);
}

/// FC^{-1}: eta = (z + conj(z) w) / P.
template <class T>
Cplx<T> fc_inv(const Cplx<T>& w, const Cplx<T>& z) {
  const T P = T(1.0) - numerics::norm2(w);
  return (z + numerics::conj(z) * w) / Cplx<T>(P);
}

/// FC1: 2iu = (v+i) eta - (v-i) conj(eta).
template <class T>
Cplx<T> fc1(const Cplx<T>& v, const Cplx<T>& eta) {
  const Cplx<T> i = Cplx<T>::i();
  return ((v + i) * eta - (v - i) * numerics::conj(eta)) / (2.0 * i);
}

/// FC1^{-1}: eta = (u conj(v) - conj(u) v + i(conj(u) - u)) / (conj(v) - v).
template <class T>
Cplx<T> fc1_inv(const Cplx<T>& v, const Cplx<T>& u) {
  using numerics::conj;
  const Cplx<T> i = Cplx<T>::i();
  return (u * conj(v) - conj(u) * v + i * (conj(u) - u)) / (conj(v) - v);
}

/// (x, y, p, q) -> (v, u) with v = x + iy, u = p v + q.
template <class T>
std::pair<Cplx<T>, Cplx<T>> s_to_complex(const T& x, const T& y, const T& p, const T& q) {
  const Cplx<T> v(x, y);
  return {v, Cplx<T>(p) * v + Cplx<T>(q)};
}

/// (v, u) -> (x, y, p, q) with p = Im u / Im v, q = Im(conj(u) v) / Im v.
template <class T>
std::array<T, 4> complex_to_s(const Cplx<T>& v, const Cplx<T>& u) {
  const T p = u.im / v.im;
  const T q = (numerics::conj(u) * v).im / v.im;
  return {v.re, v.im, p, q};
}

/// Real coordinates of `from` expressed in the hub chart xypq (4-dimensional charts only).
template <class T>
std::array<T, 4> to_xypq(Chart from, const std::array<T, 4>& a) {
  switch (from) {
    case Chart::xypq: return a;
    case Chart::uhp_vu:
    case Chart::xyxirho:  // xi = p x + q, rho = p y
    {
      const T p = a[3] / a[1];
      return {a[0], a[1], p, a[2] - p * a[0]};
    }
    case Chart::xychipsi: return {a[0], a[1], a[3], a[2]};  // psi = p, chi = q
    case Chart::disk_wz: {
      const auto [v, u] = disk_to_uhp(Cplx<T>(a[0], a[1]), Cplx<T>(a[2], a[3]));
      return complex_to_s(v, u);
    }
    case Chart::disk_weta: {
      const Cplx<T> w(a[0], a[1]);
      const auto [v, u] = disk_to_uhp(w, fc(w, Cplx<T>(a[2], a[3])));
      return complex_to_s(v, u);
    }
    default: throw IncompatibleChart(std::string("no 4-dimensional change from ") + chart_name(from));
  }
}

template <class T>
std::array<T, 4> from_xypq(Chart to, const std::array<T, 4>& s) {
  switch (to) {
    case Chart::xypq: return s;
    case Chart::uhp_vu:
    case Chart::xyxirho: return {s[0], s[1], s[2] * s[0] + s[3], s[2] * s[1]};
    case Chart::xychipsi: return {s[0], s[1], s[3], s[2]};
    case Chart::disk_wz:
    case Chart::disk_weta: {
      const auto [v, u] = s_to_complex(s[0], s[1], s[2], s[3]);
      const auto [w, z] = uhp_to_disk(v, u);
      if (to == Chart::disk_wz) return {w.re, w.im, z.re, z.im};
      const auto eta = fc_inv(w, z);
      return {w.re, w.im, eta.re, eta.im};
    }
    default: throw IncompatibleChart(std::string("no 4-dimensional change to ") + chart_name(to));
  }
}

/// Chart change on real coordinates; 5-dimensional charts carry kappa through.
template <class T>
Coords<T> change(Chart from, Chart to, const Coords<T>& x) {
  Coords<T> out{};
  for (auto& v : out) v = T(0.0);
  const auto base4 = [](Chart c) -> std::optional<Chart> {
    switch (c) {
      case Chart::uhp_vuk: return Chart::uhp_vu;
      case Chart::xyxirhok: return Chart::xyxirho;
      case Chart::xypqk: return Chart::xypq;
      default: return std::nullopt;
    }
  };
  if (from == to) return x;
  if (chart_dim(from) == 4 && chart_dim(to) == 4) {
    const auto r = from_xypq(to, to_xypq(from, std::array<T, 4>{x[0], x[1], x[2], x[3]}));
    for (int i = 0; i < 4; ++i) out[i] = r[i];
    return out;
  }
  const auto bf = base4(from), bt = base4(to);
  if (bf && bt) {
    const auto r = from_xypq(*bt, to_xypq(*bf, std::array<T, 4>{x[0], x[1], x[2], x[3]}));
    for (int i = 0; i < 4; ++i) out[i] = r[i];
    out[4] = x[4];
    return out;
  }
  throw IncompatibleChart(std::string("cannot change chart ") + chart_name(from) + " -> " + chart_name(to));
}

} // namespace transforms

// ---------------------------------------------------------------------------
// Public double-valued API

namespace detail {
inline numerics::Cplx<double> c(const Complex& z) { return numerics::from_std(z); }
} // namespace detail

inline UhpPoint cayley(const DiskPoint& d) {
  const auto [v, u] = transforms::disk_to_uhp(detail::c(d.w), detail::c(d.z));
  return UhpPoint(numerics::to_std(v), numerics::to_std(u));
}

inline DiskPoint cayley_inv(const UhpPoint& h) {
  const auto [w, z] = transforms::uhp_to_disk(detail::c(h.v), detail::c(h.u));
  return DiskPoint(numerics::to_std(w), numerics::to_std(z));
}

inline Complex fc(Complex w, Complex eta) { return numerics::to_std(transforms::fc(detail::c(w), detail::c(eta))); }
inline Complex fc_inv(Complex w, Complex z) { return numerics::to_std(transforms::fc_inv(detail::c(w), detail::c(z))); }
inline Complex fc1(Complex v, Complex eta) { return numerics::to_std(transforms::fc1(detail::c(v), detail::c(eta))); }
inline Complex fc1_inv(Complex v, Complex u) { return numerics::to_std(transforms::fc1_inv(detail::c(v), detail::c(u))); }

inline UhpPoint s_to_complex(double x, double y, double p, double q) {
  const auto [v, u] = transforms::s_to_complex(x, y, p, q);
  return UhpPoint(numerics::to_std(v), numerics::to_std(u));
}

inline std::array<double, 4> complex_to_s(const UhpPoint& h) {
  return transforms::complex_to_s(detail::c(h.v), detail::c(h.u));
}

inline ChartPoint chart_change(const ChartPoint& pt, Chart to) {
  return ChartPoint(to, transforms::change(pt.chart, to, pt.coords));
}

/// Real Jacobian d(to)/d(from) of a chart change, by dual numbers.
inline std::vector<std::vector<double>> chart_jacobian(Chart from, Chart to, const Coords<double>& x) {
  using D = numerics::Dual<double, kMaxDim>;
  Coords<D> xd;
  for (std::size_t i = 0; i < kMaxDim; ++i) xd[i] = D::variable(x[i], i);
  const Coords<D> y = transforms::change(from, to, xd);
  const std::size_t m = chart_dim(to), n = chart_dim(from);
  std::vector<std::vector<double>> J(m, std::vector<double>(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) J[i][j] = y[i].d[j];
  return J;
}

// ---------------------------------------------------------------------------
// One-forms

/// Complex one-form: coefficients of the real coordinate differentials of `chart`.
struct OneFormValue {
  Chart chart = Chart::uhp_vu;
  std::vector<Complex> coeff;

  OneFormValue scaled(Complex s) const {
    OneFormValue r = *this;
    for (auto& c : r.coeff) c *= s;
    return r;
  }
};

/// Maximum coefficient difference; charts must match.
inline double form_distance(const OneFormValue& a, const OneFormValue& b) {
  if (a.chart != b.chart || a.coeff.size() != b.coeff.size())
    throw IncompatibleChart("one-forms live on different charts");
  double m = 0.0;
  for (std::size_t i = 0; i < a.coeff.size(); ++i) m = std::max(m, std::abs(a.coeff[i] - b.coeff[i]));
  return m;
}

/// Pullback of a form given at the image point through a map with real Jacobian J (image x source).
inline OneFormValue pullback(const OneFormValue& form, const std::vector<std::vector<double>>& J, Chart source) {
  OneFormValue r{source, std::vector<Complex>(chart_dim(source), Complex(0.0))};
  for (std::size_t j = 0; j < r.coeff.size(); ++j)
    for (std::size_t i = 0; i < form.coeff.size(); ++i) r.coeff[j] += form.coeff[i] * J[i][j];
  return r;
}

/// A = dz + conj(eta) dw on the disk (chart disk_wz); in chart disk_weta, A = d eta - w d conj(eta).
inline OneFormValue eval_form_A(const ChartPoint& pt) {
  const Complex I(0.0, 1.0);
  const Complex w(pt.coords[0], pt.coords[1]);
  if (pt.chart == Chart::disk_wz) {
    const Complex eta = fc_inv(w, Complex(pt.coords[2], pt.coords[3]));
    const Complex eb = std::conj(eta);
    return {Chart::disk_wz, {eb, I * eb, 1.0, I}};
  }
  if (pt.chart == Chart::disk_weta) return {Chart::disk_weta, {0.0, 0.0, 1.0 - w, I * (1.0 + w)}};
  throw UnknownChart(std::string("form A is not defined on chart ") + chart_name(pt.chart));
}

inline OneFormValue eval_form_A(const DiskPoint& d) {
  return eval_form_A(ChartPoint(Chart::disk_wz, std::vector<double>{d.w.real(), d.w.imag(), d.z.real(), d.z.imag()}));
}

/// B(v,u) = du - ((u - conj u)/(v - conj v)) dv in the requested chart.
inline OneFormValue eval_form_B(const ChartPoint& pt) {
  const Complex I(0.0, 1.0);
  const auto& a = pt.coords;
  switch (pt.chart) {
    case Chart::uhp_vu: {
      const Complex v(a[0], a[1]), u(a[2], a[3]);
      const Complex s = (u - std::conj(u)) / (v - std::conj(v));
      return {Chart::uhp_vu, {-s, -I * s, 1.0, I}};
    }
    case Chart::xyxirho: {
      // du - (rho/y) dv
      const double s = a[3] / a[1];
      return {Chart::xyxirho, {-s, -I * s, 1.0, I}};
    }
    case Chart::xypq:  // v dp + dq
      return {Chart::xypq, {0.0, 0.0, Complex(a[0], a[1]), 1.0}};
    case Chart::xychipsi:  // x dpsi + dchi + i y dpsi
      return {Chart::xychipsi, {0.0, 0.0, 1.0, Complex(a[0], a[1])}};
    default: throw UnknownChart(std::string("form B is not defined on chart ") + chart_name(pt.chart));
  }
}

} // namespace jacobi
