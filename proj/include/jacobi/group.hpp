#pragma once

/**
 * @file group.hpp
 * @brief The real Jacobi group SL(2,R) x| H_1 and its 4x4 symplectic embedding.
 *
 * An element is stored as (M, lambda, mu, kappa) with M in SL(2,R) and
 * (lambda, mu, kappa) the Heisenberg coordinates. The companion pair
 * (p, q) = (lambda, mu) M^{-1} is derived on demand. Embedded matrix:
 *
 *     | a       0  b   q     |
 *     | lambda  1  mu  kappa |
 *     | c       0  d  -p     |
 *     | 0       0  0   1     |
 *
 * All element types are templates over the scalar so that actions can be
 * differentiated with dual numbers; the `double` aliases are the public face.
 */

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

#include "jacobi/errors.hpp"
#include "jacobi/numerics/dual.hpp"

namespace jacobi {

/// Tolerance on |det M - 1| accepted at construction.
inline constexpr double kDetTolerance = 1e-12;

template <class T = double>
struct BasicSl2 {
  T a{1.0}, b{0.0}, c{0.0}, d{1.0};

  BasicSl2() = default;
  /// Fails with InvalidElement when |ad - bc - 1| exceeds kDetTolerance.
  BasicSl2(const T& a_, const T& b_, const T& c_, const T& d_) : a(a_), b(b_), c(c_), d(d_) {
    const double det = numerics::value(a * d - b * c);
    if (!(std::abs(det - 1.0) <= kDetTolerance))
      throw InvalidElement("SL(2,R) element has det " + std::to_string(det));
  }

  T det() const { return a * d - b * c; }
  BasicSl2 inverse() const { return BasicSl2(d, -b, -c, a); }

  friend BasicSl2 operator*(const BasicSl2& m, const BasicSl2& n) {
    return BasicSl2(m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c,
                    m.c * n.b + m.d * n.d);
  }
};

template <class T = double>
struct BasicGroupElement {
  BasicSl2<T> M;
  T lambda{0.0}, mu{0.0}, kappa{0.0};

  /// (p, q) = (lambda, mu) M^{-1} = (lambda d - mu c, -lambda b + mu a).
  T p() const { return lambda * M.d - mu * M.c; }
  T q() const { return -lambda * M.b + mu * M.a; }

  static BasicGroupElement identity() { return {}; }
};

using Sl2Element = BasicSl2<double>;
using GroupElement = BasicGroupElement<double>;
using Mat4 = Eigen::Matrix4d;

/// Iwasawa data M = n(x) a(y) k(theta); theta normalized to (-pi, pi].
template <class T = double>
struct BasicIwasawa {
  T x{0.0}, y{1.0}, theta{0.0};
};
using IwasawaCoords = BasicIwasawa<double>;

/// S-coordinates (x, y, theta, p, q, kappa) of a group element.
template <class T = double>
struct BasicSCoords {
  T x{0.0}, y{1.0}, theta{0.0}, p{0.0}, q{0.0}, kappa{0.0};
};
using SCoords = BasicSCoords<double>;

template <class T>
BasicGroupElement<T> compose(const BasicGroupElement<T>& g, const BasicGroupElement<T>& h) {
  BasicGroupElement<T> r;
  r.M = g.M * h.M;
  // X1 = X M' + X'
  r.lambda = g.lambda * h.M.a + g.mu * h.M.c + h.lambda;
  r.mu = g.lambda * h.M.b + g.mu * h.M.d + h.mu;
  // kappa1 = kappa + kappa' + det[X M'; X'] = kappa + kappa' + lambda q' - mu p'
  r.kappa = g.kappa + h.kappa + g.lambda * h.q() - g.mu * h.p();
  return r;
}

template <class T>
BasicGroupElement<T> inverse(const BasicGroupElement<T>& g) {
  BasicGroupElement<T> r;
  r.M = g.M.inverse();
  r.lambda = -g.p();
  r.mu = -g.q();
  r.kappa = -g.kappa;
  return r;
}

inline Mat4 embed(const GroupElement& g) {
  Mat4 m;
  m << g.M.a, 0, g.M.b, g.q(),
       g.lambda, 1, g.mu, g.kappa,
       g.M.c, 0, g.M.d, -g.p(),
       0, 0, 0, 1;
  return m;
}

/// Standard symplectic form in the ordering of embed().
inline Mat4 symplectic_form() {
  Mat4 J = Mat4::Zero();
  J(0, 2) = J(1, 3) = 1.0;
  J(2, 0) = J(3, 1) = -1.0;
  return J;
}

/// Reads (M, lambda, mu, kappa) back from an embedded matrix. The pattern of
/// fixed entries and the (p, q) column must match within `tol`.
inline GroupElement from_matrix(const Mat4& m, double tol = 1e-10) {
  GroupElement g;
  g.M = Sl2Element(m(0, 0), m(0, 2), m(2, 0), m(2, 2));
  g.lambda = m(1, 0);
  g.mu = m(1, 2);
  g.kappa = m(1, 3);
  const double pattern = std::max({std::abs(m(0, 1)), std::abs(m(2, 1)), std::abs(m(3, 0)),
                                   std::abs(m(3, 1)), std::abs(m(3, 2)), std::abs(m(1, 1) - 1.0),
                                   std::abs(m(3, 3) - 1.0), std::abs(m(0, 3) - g.q()),
                                   std::abs(m(2, 3) + g.p())});
  if (!(pattern <= tol)) throw InvalidElement("matrix is not an embedded Jacobi group element");
  return g;
}

template <class T>
T normalize_angle(T theta) {
  constexpr double pi = std::numbers::pi;
  while (numerics::value(theta) <= -pi) theta = theta + 2.0 * pi;
  while (numerics::value(theta) > pi) theta = theta - 2.0 * pi;
  return theta;
}

template <class T>
BasicIwasawa<T> iwasawa(const BasicSl2<T>& M) {
  using std::atan2;
  const T s = M.c * M.c + M.d * M.d;
  BasicIwasawa<T> r;
  r.x = (M.a * M.c + M.b * M.d) / s;
  r.y = T(1.0) / s;
  r.theta = normalize_angle(atan2(-M.c, M.d));
  return r;
}

template <class T>
BasicSl2<T> from_iwasawa(const BasicIwasawa<T>& w) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  if (!(numerics::value(w.y) > 0.0)) throw DomainViolation("Iwasawa y must be positive");
  const T sy = sqrt(w.y);
  const T c = cos(w.theta), s = sin(w.theta);
  return BasicSl2<T>(sy * c - w.x / sy * s, sy * s + w.x / sy * c, -s / sy, c / sy);
}

template <class T>
BasicSCoords<T> ez_to_s(const BasicGroupElement<T>& g) {
  const auto w = iwasawa(g.M);
  return {w.x, w.y, w.theta, g.p(), g.q(), g.kappa};
}

template <class T>
BasicGroupElement<T> s_to_ez(const BasicSCoords<T>& s) {
  BasicGroupElement<T> g;
  g.M = from_iwasawa(BasicIwasawa<T>{s.x, s.y, s.theta});
  // (lambda, mu) = (p, q) M
  g.lambda = s.p * g.M.a + s.q * g.M.c;
  g.mu = s.p * g.M.b + s.q * g.M.d;
  g.kappa = s.kappa;
  return g;
}

// JSON: flat objects with fixed field names.
inline void to_json(nlohmann::json& j, const GroupElement& g) {
  j = nlohmann::json{{"a", g.M.a}, {"b", g.M.b}, {"c", g.M.c}, {"d", g.M.d},
                     {"lambda", g.lambda}, {"mu", g.mu}, {"kappa", g.kappa}};
}
inline void from_json(const nlohmann::json& j, GroupElement& g) {
  g.M = Sl2Element(j.at("a").get<double>(), j.at("b").get<double>(), j.at("c").get<double>(),
                   j.at("d").get<double>());
  j.at("lambda").get_to(g.lambda);
  j.at("mu").get_to(g.mu);
  j.at("kappa").get_to(g.kappa);
}
inline void to_json(nlohmann::json& j, const SCoords& s) {
  j = nlohmann::json{{"x", s.x}, {"y", s.y}, {"theta", s.theta},
                     {"p", s.p}, {"q", s.q}, {"kappa", s.kappa}};
}
inline void from_json(const nlohmann::json& j, SCoords& s) {
  j.at("x").get_to(s.x);
  j.at("y").get_to(s.y);
  j.at("theta").get_to(s.theta);
  j.at("p").get_to(s.p);
  j.at("q").get_to(s.q);
  j.at("kappa").get_to(s.kappa);
}

} // namespace jacobi
