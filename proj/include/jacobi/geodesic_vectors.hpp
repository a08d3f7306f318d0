#pragma once

/**
 * @file geodesic_vectors.hpp
 * @brief Geodesic vectors of the Siegel-Jacobi half-plane and its extension in the
 * orthonormal frame L1..L6: the inner-product condition, the polynomial systems,
 * Tables 1 and 2, the natural-reductivity matrix and the constants F2, F3, R3.
 *
 * Frame vectors are written X = aL1 + bL2 + cL3 + dL4 + eL5 + fL6.
 * xj1:    m = <L1,L2,L4,L5>, h = <L3,L6>
 * xj1ext: m = <L1,...,L5>,   h = <L6>
 */

#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "jacobi/actions.hpp"
#include "jacobi/algebra.hpp"
#include "jacobi/errors.hpp"
#include "jacobi/numerics/cubic.hpp"

namespace jacobi {

struct FrameVector {
  std::array<double, 6> c{};  // (a, b, c, d, e, f)

  double a() const { return c[0]; }
  double b() const { return c[1]; }
  double cc() const { return c[2]; }
  double d() const { return c[3]; }
  double e() const { return c[4]; }
  double f() const { return c[5]; }

  Eigen::VectorXd vector() const { return Eigen::Map<const Eigen::VectorXd>(c.data(), 6); }
  double norm2() const { return vector().squaredNorm(); }
  bool is_zero() const { return vector().cwiseAbs().maxCoeff() == 0.0; }

  /// Algebra element through the frame L1 = (F+G)/(2 sqrt a), ..., L6 = R/sqrt d.
  AlgebraElement to_algebra(const FrameParams& p) const {
    const auto L = frame_generators(p);
    AlgebraElement X;
    for (int i = 0; i < 6; ++i) X = X + c[i] * L[i];
    return X;
  }
};

inline FrameVector frame_vector(double a, double b, double c, double d, double e, double f) {
  return FrameVector{{a, b, c, d, e, f}};
}

struct SpaceSpec {
  Space name = Space::xj1ext;
  std::vector<int> m;
  std::vector<int> h;
  double r = 1.0;  // sqrt(alpha / beta)
};

inline SpaceSpec space_spec(Space s, const FrameParams& p) {
  p.validate();
  const double r = std::sqrt(p.alpha / p.beta);
  switch (s) {
    case Space::xj1: return {s, {0, 1, 3, 4}, {2, 5}, r};
    case Space::xj1ext: return {s, {0, 1, 2, 3, 4}, {5}, r};
    case Space::group: break;
  }
  throw Unsupported("geodesic vectors are defined for xj1 and xj1ext");
}

namespace detail {

inline Eigen::VectorXd project(const Eigen::VectorXd& v, const std::vector<int>& idx) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
  for (int i : idx) out(i) = v(i);
  return out;
}

} // namespace detail

/// B([X,Y]_m, X_m) for every m-basis vector Y, in the orthonormal frame inner product.
inline Eigen::VectorXd geodesic_condition(const SpaceSpec& sp, const FrameAlgebra& alg, const FrameVector& X) {
  if (X.is_zero()) throw ZeroVector("geodesic condition of the zero vector");
  const Eigen::VectorXd x = X.vector();
  const Eigen::VectorXd xm = detail::project(x, sp.m);
  Eigen::VectorXd out(sp.m.size());
  for (std::size_t k = 0; k < sp.m.size(); ++k) {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(6);
    y(sp.m[k]) = 1.0;
    out(static_cast<Eigen::Index>(k)) = FrameAlgebra::inner(detail::project(alg.bracket(x, y), sp.m), xm);
  }
  return out;
}

/// Factors turning the condition into the polynomial systems below: sqrt(alpha) (1, 2, [2,] -2, 2).
inline Eigen::VectorXd condition_scale(const SpaceSpec& sp, const FrameParams& p) {
  const double s = std::sqrt(p.alpha);
  Eigen::VectorXd f(sp.m.size());
  if (sp.name == Space::xj1)
    f << s, 2 * s, -2 * s, 2 * s;
  else
    f << s, 2 * s, 2 * s, -2 * s, 2 * s;
  return f;
}

/// KL1..KL4 for the half-plane.
inline Eigen::Vector4d kl_polynomials(const FrameVector& X, double r) {
  const double a = X.a(), b = X.b(), c = X.cc(), d = X.d(), e = X.e();
  return {r * b * c + d * e, -r * a * c + d * d - e * e, b * d + e * (a + c), r * c * d + b * e - a * d};
}

/// JHH11..JHH55 for the extended half-plane.
inline Eigen::Matrix<double, 5, 1> jhh_polynomials(const FrameVector& X, double r) {
  const double a = X.a(), b = X.b(), c = X.cc(), d = X.d(), e = X.e();
  Eigen::Matrix<double, 5, 1> v;
  v << (r + 1.0 / r) * b * c + d * e, -(r + 2.0 / r) * a * c + d * d - e * e, -r * a * b + (1.0 - r) * d * e,
      b * d + e * (a + c), r * c * d + b * e - a * d;
  return v;
}

inline Eigen::VectorXd condition_polynomials(const SpaceSpec& sp, const FrameVector& X) {
  if (sp.name == Space::xj1) return kl_polynomials(X, sp.r);
  return jhh_polynomials(X, sp.r);
}

// ---------------------------------------------------------------------------
// Constants

inline double poly_f2(double r) { return r * r - r + 1.0; }
inline double poly_f3(double r) { return r * r * r + r - 1.0; }

/// Real root of F3 by the general cubic solver.
inline double r3() { return numerics::cardano_real_root(numerics::Cubic{1.0, 0.0, 1.0, -1.0}); }

/// The closed radical form cbrt(1/2 + sqrt(31/3)/6) + cbrt(1/2 - sqrt(31/3)/6).
inline double r3_radical() {
  const double s = std::sqrt(31.0 / 3.0) / 6.0;
  return std::cbrt(0.5 + s) + std::cbrt(0.5 - s);
}

// ---------------------------------------------------------------------------
// Tables

/// One member of a printed family: table (1 or 2), row (1-based) and sign choices.
struct FamilyMember {
  int table = 1;
  int row = 1;
  int eps1 = 1;
  int eps2 = 1;  // 0 when the row has fewer signs
  FrameVector X;
};

/// Free parameters of the families; each row reads the ones it names.
struct FamilyParams {
  double a = 1.0, b = 1.0, c = 1.0, e = 1.0, f = 0.0;
};

/// Number of independent signs in each row.
inline int table_row_signs(int table, int row) {
  if (table == 1) return row == 3 || row == 4 ? 1 : row == 5 ? 2 : 0;
  if (table == 2) return row == 1 ? 2 : row == 2 || row == 3 ? 1 : 0;
  throw DomainViolation("no such table");
}

inline int table_rows(int table) { return table == 1 ? 5 : 6; }

inline FrameVector table1_row(int row, double r, const FamilyParams& fp, int eps1 = 1, int eps2 = 1) {
  if (!(r > 0.0)) throw DomainViolation("r must be positive");
  const double a = fp.a, b = fp.b, c = fp.c, e = fp.e, f = fp.f, sr = std::sqrt(r);
  switch (row) {
    case 1: return frame_vector(0, 0, c, 0, 0, f);
    case 2: return frame_vector(a, b, 0, 0, 0, f);
    case 3: return frame_vector(r * c, 0, c, eps1 * r * c, 0, f);
    case 4: return frame_vector(a, 0, -a, 0, eps1 * sr * a, f);
    case 5:
      return frame_vector(eps1 * eps2 * (1.0 - r) / sr * e, eps1 * e, -eps1 * eps2 / sr * e, eps2 * sr * e, e, f);
  }
  throw DomainViolation("Table 1 has rows 1-5");
}

inline FrameVector table2_row(int row, double r, const FamilyParams& fp, int eps1 = 1, int eps2 = 1) {
  if (!(r > 0.0)) throw DomainViolation("r must be positive");
  const double a = fp.a, b = fp.b, c = fp.c, e = fp.e, f = fp.f;
  switch (row) {
    case 1: {
      const double F2 = poly_f2(r), F3 = poly_f3(r), q = r * r + 1.0;
      if (!(F3 > 0.0)) throw DomainViolation("Table 2 row 1 needs r > R3");
      return frame_vector(eps1 * eps2 * (1.0 - r) * std::sqrt(q / (r * F2)) * e, eps2 * std::sqrt(F3 / (r * q)) * e,
                          -eps1 * eps2 * r * std::sqrt(r / (q * F2)) * e, eps1 * std::sqrt(F3 / F2) * e, e, f);
    }
    case 2: {
      const double s = std::sqrt(r / (r * r + 2.0));
      return frame_vector(eps1 * s * e, 0, -eps1 * s * e, 0, e, f);
    }
    case 3: return frame_vector(r * c, 0, c, eps1 * std::sqrt(2.0 + r * r) * c, 0, f);
    case 4: return frame_vector(0, 0, c, 0, 0, f);
    case 5: return frame_vector(0, b, 0, 0, 0, f);
    case 6: return frame_vector(a, 0, 0, 0, 0, f);
  }
  throw DomainViolation("Table 2 has rows 1-6");
}

inline FrameVector table_row(int table, int row, double r, const FamilyParams& fp, int eps1 = 1, int eps2 = 1) {
  return table == 1 ? table1_row(row, r, fp, eps1, eps2) : table2_row(row, r, fp, eps1, eps2);
}

/// Every row of a table with all sign choices; Table 2 row 1 is skipped when r <= R3.
inline std::vector<FamilyMember> table_members(int table, double r, const FamilyParams& fp) {
  std::vector<FamilyMember> out;
  for (int row = 1; row <= table_rows(table); ++row) {
    if (table == 2 && row == 1 && !(poly_f3(r) > 0.0)) continue;
    const int ns = table_row_signs(table, row);
    for (int s1 : {1, -1}) {
      if (ns < 1 && s1 < 0) continue;
      for (int s2 : {1, -1}) {
        if (ns < 2 && s2 < 0) continue;
        out.push_back({table, row, ns >= 1 ? s1 : 0, ns >= 2 ? s2 : 0,
                       table_row(table, row, r, fp, ns >= 1 ? s1 : 1, ns >= 2 ? s2 : 1)});
      }
    }
  }
  return out;
}

/// Polynomial system residual relative to max(1, |X|^2).
inline double table_residual(int table, const FrameVector& X, double r) {
  const Eigen::VectorXd v = table == 1 ? Eigen::VectorXd(kl_polynomials(X, r)) : Eigen::VectorXd(jhh_polynomials(X, r));
  return v.cwiseAbs().maxCoeff() / std::max(1.0, X.norm2());
}

inline bool verify_table1(const FrameVector& X, double r, double tol = 1e-12) { return table_residual(1, X, r) <= tol; }
inline bool verify_table2(const FrameVector& X, double r, double tol = 1e-12) { return table_residual(2, X, r) <= tol; }

/// Index of the component that is pinned by the others in each row (used for negative controls).
inline int constrained_component(int table, int row) {
  static constexpr std::array<int, 5> t1 = {0, 2, 3, 2, 0};
  static constexpr std::array<int, 6> t2 = {0, 3, 4, 0, 2, 1};
  return table == 1 ? t1.at(row - 1) : t2.at(row - 1);
}

/// CSV in the column order table,row,eps1,eps2,a,b,c,d,e,f.
inline std::string tables_csv(const std::vector<FamilyMember>& members) {
  std::ostringstream os;
  os.precision(17);
  os << "table,row,eps1,eps2,a,b,c,d,e,f\n";
  for (const auto& m : members) {
    os << m.table << "," << m.row << "," << m.eps1 << "," << m.eps2;
    for (double v : m.X.c) os << "," << v;
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Natural reductivity

struct NaturalReductivity {
  Eigen::Matrix<double, 5, 5> A;
  double det = 0.0;
  double nr_gamma = 0.0;  // 1/sqrt(beta) - sqrt(beta)/alpha
  double zeta = 0.0;      // sqrt(beta)/alpha - 1/(2 sqrt(beta))
};

/// The 5x5 matrix A(X2) of the linear system in X1 on the extended half-plane.
inline NaturalReductivity natural_reductivity_matrix(const FrameVector& X2, double alpha, double beta) {
  if (!(alpha > 0.0 && beta > 0.0)) throw DomainViolation("alpha and beta must be positive");
  const double sa = std::sqrt(alpha), sb = std::sqrt(beta);
  const double g = 1.0 / sb - sb / alpha, z = sb / alpha - 1.0 / (2.0 * sb), s = 1.0 / sa + 1.0 / sb;
  const double a = X2.a(), b = X2.b(), c = X2.cc(), d = X2.d(), e = X2.e();
  NaturalReductivity nr;
  nr.nr_gamma = g;
  nr.zeta = z;
  nr.A << 0, g * c, -g * b, 0, 0,                                //
      -z * c, 0, z * a, 0, 0,                                    //
      -3 * b / sb, 3 * a / sb, 0, s * e, -s * d,                 //
      -e, -d, -e, b, a + c,                                      //
      -d / sa, e / sa, d / sb, a / sa - c / sb, -b / sa;
  nr.det = nr.A.determinant();
  return nr;
}

/// g([X1,L_k]_m, X2) + g(X1, [L_k,X2]_m) for k = 1..5, from the structure constants.
inline Eigen::Matrix<double, 5, 1> natural_reductivity_terms(const FrameAlgebra& alg, const FrameVector& X1,
                                                             const FrameVector& X2) {
  const std::vector<int> m{0, 1, 2, 3, 4};
  const Eigen::VectorXd x1 = detail::project(X1.vector(), m), x2 = detail::project(X2.vector(), m);
  Eigen::Matrix<double, 5, 1> out;
  for (int k = 0; k < 5; ++k) {
    Eigen::VectorXd l = Eigen::VectorXd::Zero(6);
    l(k) = 1.0;
    out(k) = FrameAlgebra::inner(detail::project(alg.bracket(x1, l), m), x2) +
             FrameAlgebra::inner(x1, detail::project(alg.bracket(l, x2), m));
  }
  return out;
}

/// Row factors with (A x1)_k = s_k * term_k: (-1, 1, 2, 2 sqrt(alpha), 2).
inline Eigen::Matrix<double, 5, 1> natural_reductivity_scale(double alpha) {
  Eigen::Matrix<double, 5, 1> s;
  s << -1, 1, 2, 2 * std::sqrt(alpha), 2;
  return s;
}

// ---------------------------------------------------------------------------
// Directions that are not geodesic vectors

struct GoWitness {
  FrameVector X;          // normalized m-direction, best h-components filled in
  double residual = 0.0;  // min over h-components of |condition| / |X_m|^2
};

/// Smallest condition norm over all h-completions of an m-direction; the condition is affine in them.
inline std::pair<double, FrameVector> min_over_isotropy(const SpaceSpec& sp, const FrameAlgebra& alg,
                                                        const FrameVector& Xm) {
  const Eigen::VectorXd r0 = geodesic_condition(sp, alg, Xm);
  Eigen::MatrixXd M(r0.size(), static_cast<Eigen::Index>(sp.h.size()));
  for (std::size_t j = 0; j < sp.h.size(); ++j) {
    FrameVector Xj = Xm;
    Xj.c[sp.h[j]] += 1.0;
    M.col(static_cast<Eigen::Index>(j)) = geodesic_condition(sp, alg, Xj) - r0;
  }
  const Eigen::VectorXd t = M.completeOrthogonalDecomposition().solve(-r0);  // minimum norm when rank deficient
  FrameVector best = Xm;
  for (std::size_t j = 0; j < sp.h.size(); ++j) best.c[sp.h[j]] += t(static_cast<Eigen::Index>(j));
  return {(r0 + M * t).norm(), best};
}

/// An m-direction no multiple of which (with any h-completion) satisfies the condition.
/// Tries the all-ones direction, then a {-1,0,1} grid, returning the strongest candidate.
inline std::optional<GoWitness> g_o_witness(const SpaceSpec& sp, const FrameAlgebra& alg, double threshold = 1e-3) {
  const auto score = [&](const FrameVector& X) {
    double n2 = 0.0;
    for (int i : sp.m) n2 += X.c[i] * X.c[i];
    const auto [res, best] = min_over_isotropy(sp, alg, X);
    return std::make_pair(res / n2, best);
  };
  FrameVector ones;
  for (int i : sp.m) ones.c[i] = 1.0;
  if (const auto [s, best] = score(ones); s > threshold) return GoWitness{best, s};

  std::optional<GoWitness> out;
  const std::size_t n = sp.m.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    FrameVector X;
    std::size_t cd = code;
    bool nonzero = false;
    for (std::size_t i = 0; i < n; ++i, cd /= 3) {
      X.c[sp.m[i]] = static_cast<double>(cd % 3) - 1.0;
      nonzero = nonzero || X.c[sp.m[i]] != 0.0;
    }
    if (!nonzero) continue;
    const auto [s, best] = score(X);
    if (s > threshold && (!out || s > out->residual)) out = GoWitness{best, s};
  }
  return out;
}

} // namespace jacobi
