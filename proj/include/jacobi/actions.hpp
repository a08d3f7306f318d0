#pragma once

/**
 * @file actions.hpp
 * @brief Left actions of the Jacobi group on its homogeneous spaces and the
 * fundamental vector fields (FVFs) they induce.
 *
 * Spaces and the charts on which an action is available:
 *   xj1     Siegel-Jacobi upper half-plane: uhp_vu, xypq, xyxirho, xychipsi
 *   xj1ext  extended half-plane:            xypqk, uhp_vuk, xyxirhok
 *   group   the group acting on itself:     xythetapqk
 */

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "jacobi/algebra.hpp"
#include "jacobi/charts.hpp"
#include "jacobi/errors.hpp"
#include "jacobi/group.hpp"
#include "jacobi/numerics/complex.hpp"
#include "jacobi/numerics/dual.hpp"
#include "jacobi/numerics/matrix_exp.hpp"

namespace jacobi {

enum class Space { xj1, xj1ext, group };

inline const char* space_name(Space s) {
  switch (s) {
    case Space::xj1: return "xj1";
    case Space::xj1ext: return "xj1ext";
    case Space::group: return "group";
  }
  return "?";
}

inline Space space_from_name(const std::string& n) {
  if (n == "xj1") return Space::xj1;
  if (n == "xj1ext") return Space::xj1ext;
  if (n == "group") return Space::group;
  throw Unsupported("unknown space '" + n + "'");
}

/// Chart used for a space when none is given.
inline Chart default_chart(Space s) {
  switch (s) {
    case Space::xj1: return Chart::xypq;
    case Space::xj1ext: return Chart::xypqk;
    case Space::group: return Chart::xythetapqk;
  }
  return Chart::xypq;
}

inline bool action_supported(Space s, Chart c) {
  switch (s) {
    case Space::xj1:
      return c == Chart::uhp_vu || c == Chart::xypq || c == Chart::xyxirho || c == Chart::xychipsi;
    case Space::xj1ext: return c == Chart::xypqk || c == Chart::uhp_vuk || c == Chart::xyxirhok;
    case Space::group: return c == Chart::xythetapqk;
  }
  return false;
}

/// Element with every entry converted to the scalar T (no derivative content).
template <class T>
BasicGroupElement<T> lift(const GroupElement& g) {
  BasicGroupElement<T> r;
  r.M = BasicSl2<T>(T(g.M.a), T(g.M.b), T(g.M.c), T(g.M.d));
  r.lambda = T(g.lambda);
  r.mu = T(g.mu);
  r.kappa = T(g.kappa);
  return r;
}

namespace detail {

template <class T>
numerics::Cplx<T> mobius_denominator(const BasicSl2<T>& M, const numerics::Cplx<T>& tau) {
  const numerics::Cplx<T> den = numerics::Cplx<T>(M.c) * tau + numerics::Cplx<T>(M.d);
  if (!(std::sqrt(numerics::value(numerics::norm2(den))) > 1e-14))
    throw DomainViolation("c tau + d vanishes");
  return den;
}

/// (x, y, p, q) -> (x1, y1, p1, q1): Moebius on tau and (p1,q1) = (p,q) + (p',q') M^{-1}.
template <class T>
std::array<T, 4> act_xypq(const BasicGroupElement<T>& g, const T& x, const T& y, const T& p, const T& q) {
  using numerics::Cplx;
  const auto& M = g.M;
  const Cplx<T> tau(x, y);
  const Cplx<T> t1 = (Cplx<T>(M.a) * tau + Cplx<T>(M.b)) / mobius_denominator(M, tau);
  return {t1.re, t1.im, g.p() + M.d * p - M.c * q, g.q() - M.b * p + M.a * q};
}

} // namespace detail

/// Left action of g on a point in real chart coordinates.
template <class T>
Coords<T> act(Space space, Chart chart, const BasicGroupElement<T>& g, const Coords<T>& pt) {
  if (!action_supported(space, chart))
    throw IncompatibleChart(std::string("no action of ") + space_name(space) + " on chart " + chart_name(chart));
  using numerics::Cplx;
  Coords<T> out{};
  for (auto& v : out) v = T(0.0);
  switch (space) {
    case Space::xj1: {
      if (chart == Chart::uhp_vu) {
        // tau1 = (a tau + b)/(c tau + d), z1 = (z + lambda tau + mu)/(c tau + d)
        const Cplx<T> tau(pt[0], pt[1]), z(pt[2], pt[3]);
        const Cplx<T> den = detail::mobius_denominator(g.M, tau);
        const Cplx<T> t1 = (Cplx<T>(g.M.a) * tau + Cplx<T>(g.M.b)) / den;
        const Cplx<T> z1 = (z + Cplx<T>(g.lambda) * tau + Cplx<T>(g.mu)) / den;
        out[0] = t1.re, out[1] = t1.im, out[2] = z1.re, out[3] = z1.im;
        return out;
      }
      const Coords<T> s = transforms::change(chart, Chart::xypq, pt);
      const auto r = detail::act_xypq(g, s[0], s[1], s[2], s[3]);
      for (int i = 0; i < 4; ++i) out[i] = r[i];
      return transforms::change(Chart::xypq, chart, out);
    }
    case Space::xj1ext: {
      const Coords<T> s = transforms::change(chart, Chart::xypqk, pt);
      const auto r = detail::act_xypq(g, s[0], s[1], s[2], s[3]);
      for (int i = 0; i < 4; ++i) out[i] = r[i];
      // kappa1 = kappa + kappa' + lambda q' - mu p'
      out[4] = g.kappa + s[4] + g.lambda * s[3] - g.mu * s[2];
      return transforms::change(Chart::xypqk, chart, out);
    }
    case Space::group: {
      const BasicSCoords<T> s{pt[0], pt[1], pt[2], pt[3], pt[4], pt[5]};
      const auto r = ez_to_s(compose(g, s_to_ez(s)));
      out[0] = r.x, out[1] = r.y, out[2] = r.theta, out[3] = r.p, out[4] = r.q, out[5] = r.kappa;
      return out;
    }
  }
  return out;
}

inline ChartPoint act(Space space, const GroupElement& g, const ChartPoint& pt) {
  return ChartPoint(pt.chart, act(space, pt.chart, lift<double>(g), pt.coords));
}

/// exp(X) as a group element, through the 4x4 embedding.
inline GroupElement exp_algebra(const AlgebraElement& X) { return from_matrix(numerics::expm(X.matrix()), 1e-9); }

// ---------------------------------------------------------------------------
// Fundamental vector fields in closed form

/// How the group self-action G* is read: `completed` adds -y d/dtheta to the
/// extended-space G* (which carries -q d/dp); `literal` uses G*_1 - y d/dtheta only.
enum class GStarReading { completed, literal };

/// Closed-form FVF of a generator on a (space, chart) pair.
struct VectorFieldExpr {
  Space space = Space::xj1ext;
  Chart chart = Chart::xypqk;
  Generator gen = Generator::F;
  GStarReading reading = GStarReading::completed;

  std::size_t dim() const { return chart_dim(chart); }

  template <class T>
  Coords<T> operator()(const Coords<T>& c) const {
    Coords<T> X{};
    for (auto& v : X) v = T(0.0);
    const bool holomorphic = chart == Chart::uhp_vu || chart == Chart::uhp_vuk;
    const bool xirho = chart == Chart::xyxirho || chart == Chart::xyxirhok;
    const bool extended = space != Space::xj1;

    if (holomorphic) {
      // Holomorphic fields f_tau d_tau + f_z d_z realified as (Re f_tau, Im f_tau, Re f_z, Im f_z).
      using numerics::Cplx;
      const Cplx<T> tau(c[0], c[1]), z(c[2], c[3]);
      Cplx<T> ft(T(0.0)), fz(T(0.0));
      switch (gen) {
        case Generator::F: ft = Cplx<T>(T(1.0)); break;
        case Generator::G: ft = -(tau * tau), fz = -(z * tau); break;
        case Generator::H: ft = 2.0 * tau, fz = z; break;
        case Generator::P: fz = tau; break;
        case Generator::Q: fz = Cplx<T>(T(1.0)); break;
        case Generator::R: break;
      }
      X[0] = ft.re, X[1] = ft.im, X[2] = fz.re, X[3] = fz.im;
      if (extended) {
        const T p = c[3] / c[1];
        const T q = (c[2] * c[1] - c[3] * c[0]) / c[1];
        if (gen == Generator::P) X[4] = q;
        if (gen == Generator::Q) X[4] = -p;
        if (gen == Generator::R) X[4] = T(1.0);
      }
      return X;
    }

    const T& x = c[0];
    const T& y = c[1];
    if (xirho) {
      const T& xi = c[2];
      const T& rho = c[3];
      switch (gen) {
        case Generator::F: X[0] = T(1.0); break;
        case Generator::G:
          X[0] = y * y - x * x, X[1] = -2.0 * x * y;
          X[2] = rho * y - xi * x, X[3] = -(xi * y + x * rho);
          break;
        case Generator::H: X[0] = 2.0 * x, X[1] = 2.0 * y, X[2] = xi, X[3] = rho; break;
        case Generator::P: X[2] = x, X[3] = y; break;
        case Generator::Q: X[2] = T(1.0); break;
        case Generator::R: break;
      }
      if (extended) {
        const T p = rho / y;
        const T q = xi - x * rho / y;
        if (gen == Generator::P) X[4] = q;
        if (gen == Generator::Q) X[4] = -p;
        if (gen == Generator::R) X[4] = T(1.0);
      }
      return X;
    }

    // S-coordinate charts: (x, y, p, q[, kappa]) or (x, y, theta, p, q, kappa)
    const bool with_theta = chart == Chart::xythetapqk;
    const std::size_t ip = with_theta ? 3 : 2, iq = ip + 1, ik = iq + 1;
    const T& p = c[ip];
    const T& q = c[iq];
    switch (gen) {
      case Generator::F: X[0] = T(1.0), X[iq] = -p; break;
      case Generator::G:
        X[0] = y * y - x * x, X[1] = -2.0 * x * y;
        if (!(with_theta && reading == GStarReading::literal)) X[ip] = -q;
        if (with_theta) X[2] = -y;
        break;
      case Generator::H: X[0] = 2.0 * x, X[1] = 2.0 * y, X[ip] = -p, X[iq] = q; break;
      case Generator::P:
        X[ip] = T(1.0);
        if (extended) X[ik] = q;
        break;
      case Generator::Q:
        X[iq] = T(1.0);
        if (extended) X[ik] = -p;
        break;
      case Generator::R:
        if (extended) X[ik] = T(1.0);
        break;
    }
    return X;
  }
};

/// Closed-form FVF for the printed (space, chart) combinations; Unsupported otherwise.
inline VectorFieldExpr fvf_closed_form(Space space, Chart chart, Generator gen,
                                       GStarReading reading = GStarReading::completed) {
  const bool ok = (space == Space::xj1 && (chart == Chart::uhp_vu || chart == Chart::xyxirho || chart == Chart::xypq)) ||
                  (space == Space::xj1ext &&
                   (chart == Chart::uhp_vuk || chart == Chart::xyxirhok || chart == Chart::xypqk)) ||
                  (space == Space::group && chart == Chart::xythetapqk);
  if (!ok)
    throw Unsupported(std::string("no closed-form fundamental vector field for ") + space_name(space) + " on " +
                      chart_name(chart));
  return {space, chart, gen, reading};
}

/// Linear combination sum_i coeff_i X_i^* of closed-form FVFs.
template <class T>
Coords<T> fvf_combination(Space space, Chart chart, const AlgebraElement& X, const Coords<T>& c,
                          GStarReading reading = GStarReading::completed) {
  Coords<T> out{};
  for (auto& v : out) v = T(0.0);
  for (int i = 0; i < 6; ++i) {
    if (X.coeff[i] == 0.0) continue;
    const auto f = fvf_closed_form(space, chart, Generator(i), reading)(c);
    for (std::size_t k = 0; k < kMaxDim; ++k) out[k] += X.coeff[i] * f[k];
  }
  return out;
}

enum class FvfMode { dual, finite_difference };

/// d/dt act(exp(tX), pt) at t = 0.
inline Coords<double> fvf_numeric(Space space, Chart chart, const AlgebraElement& X, const Coords<double>& pt,
                                  FvfMode mode = FvfMode::dual) {
  Coords<double> out{};
  if (mode == FvfMode::dual) {
    using D = numerics::Dual<double, 1>;
    const Mat4 m = X.matrix();
    const auto eps = [&](double v) { return D(0.0, {v}); };
    BasicGroupElement<D> g;
    // exp(eps X) = I + eps X to first order; det is 1 at the value level since X is traceless.
    g.M = BasicSl2<D>(D(1.0, {m(0, 0)}), eps(m(0, 2)), eps(m(2, 0)), D(1.0, {m(2, 2)}));
    g.lambda = eps(m(1, 0));
    g.mu = eps(m(1, 2));
    g.kappa = eps(m(1, 3));
    Coords<D> x;
    for (std::size_t i = 0; i < kMaxDim; ++i) x[i] = D(pt[i]);
    const Coords<D> y = act(space, chart, g, x);
    for (std::size_t i = 0; i < kMaxDim; ++i) out[i] = y[i].d[0];
    return out;
  }
  const double h = 1e-6;
  const auto plus = act(space, chart, lift<double>(exp_algebra(h * X)), pt);
  const auto minus = act(space, chart, lift<double>(exp_algebra((-h) * X)), pt);
  for (std::size_t i = 0; i < kMaxDim; ++i) {
    double diff = plus[i] - minus[i];
    if (space == Space::group && i == 2) diff = normalize_angle(diff);
    out[i] = diff / (2.0 * h);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Brackets of vector fields

/// Lie bracket [U, V]^mu = U^nu d_nu V^mu - V^nu d_nu U^mu at a point.
template <class FU, class FV>
Coords<double> vector_field_bracket(const FU& U, const FV& V, const Coords<double>& pt, std::size_t dim) {
  using D = numerics::Dual<double, kMaxDim>;
  Coords<D> x;
  for (std::size_t i = 0; i < kMaxDim; ++i) x[i] = D::variable(pt[i], i);
  const Coords<D> u = U(x), v = V(x);
  Coords<double> out{};
  for (std::size_t mu = 0; mu < dim; ++mu)
    for (std::size_t nu = 0; nu < dim; ++nu) out[mu] += u[nu].val * v[mu].d[nu] - v[nu].val * u[mu].d[nu];
  return out;
}

struct FvfBracketEntry {
  int i = 0, j = 0;  // generator indices, i < j
  double deviation_anti = 0.0;  // max |[Xi*,Xj*] + [Xi,Xj]*|
  double deviation_homo = 0.0;  // max |[Xi*,Xj*] - [Xi,Xj]*|
};

struct FvfBracketAudit {
  Space space = Space::xj1ext;
  Chart chart = Chart::xypqk;
  int sign = -1;  // [X*,Y*] = sign [X,Y]*
  double max_deviation = 0.0;
  std::vector<FvfBracketEntry> entries;
  std::vector<FvfBracketEntry> outliers;
};

/// Compares all 15 brackets of closed-form FVFs with the algebra brackets on sample points
/// and reports which global sign fits.
inline FvfBracketAudit fvf_bracket_audit(Space space, Chart chart, const std::vector<Coords<double>>& points,
                                         GStarReading reading = GStarReading::completed, double tol = 1e-8) {
  FvfBracketAudit rep{space, chart, -1, 0.0, {}, {}};
  const std::size_t n = chart_dim(chart);
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) {
      const auto Xi = fvf_closed_form(space, chart, Generator(i), reading);
      const auto Xj = fvf_closed_form(space, chart, Generator(j), reading);
      const AlgebraElement br = bracket(AlgebraElement::basis(Generator(i)), AlgebraElement::basis(Generator(j)));
      FvfBracketEntry e{i, j, 0.0, 0.0};
      for (const auto& pt : points) {
        const auto lhs = vector_field_bracket(Xi, Xj, pt, n);
        const auto rhs = fvf_combination(space, chart, br, pt, reading);
        for (std::size_t k = 0; k < n; ++k) {
          e.deviation_anti = std::max(e.deviation_anti, std::abs(lhs[k] + rhs[k]));
          e.deviation_homo = std::max(e.deviation_homo, std::abs(lhs[k] - rhs[k]));
        }
      }
      rep.entries.push_back(e);
    }
  double anti = 0.0, homo = 0.0;
  for (const auto& e : rep.entries) anti = std::max(anti, e.deviation_anti), homo = std::max(homo, e.deviation_homo);
  rep.sign = anti <= homo ? -1 : 1;
  rep.max_deviation = std::min(anti, homo);
  for (const auto& e : rep.entries)
    if ((rep.sign < 0 ? e.deviation_anti : e.deviation_homo) > tol) rep.outliers.push_back(e);
  return rep;
}

} // namespace jacobi
