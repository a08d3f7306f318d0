#pragma once

/**
 * @file algebra.hpp
 * @brief Lie algebra of the real Jacobi group, structure-constant tables and
 * subspace decompositions.
 *
 * Generators in the 4x4 realization (E(i,j) the matrix unit):
 *   F = E02, G = E20, H = E00 - E22, P = E10 - E23, Q = E03 + E12, R = E13.
 */

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "jacobi/errors.hpp"
#include "jacobi/group.hpp"

namespace jacobi {

enum class Generator { F = 0, G, H, P, Q, R };

inline constexpr std::array<const char*, 6> kGeneratorNames = {"F", "G", "H", "P", "Q", "R"};

/// Element of the 6-dimensional algebra over the basis (F, G, H, P, Q, R).
struct AlgebraElement {
  std::array<double, 6> coeff{};

  static AlgebraElement basis(Generator g) {
    AlgebraElement e;
    e.coeff[static_cast<int>(g)] = 1.0;
    return e;
  }

  Mat4 matrix() const {
    const auto& [f, g, h, p, q, r] = coeff;
    Mat4 m = Mat4::Zero();
    m(0, 2) = f;
    m(2, 0) = g;
    m(0, 0) = h;
    m(2, 2) = -h;
    m(1, 0) = p;
    m(2, 3) = -p;
    m(0, 3) = q;
    m(1, 2) = q;
    m(1, 3) = r;
    return m;
  }

  /// Reads coefficients off a 4x4 matrix; NotInAlgebra when it is not in the span.
  static AlgebraElement from_matrix(const Mat4& m, double tol = 1e-12) {
    AlgebraElement e;
    e.coeff = {m(0, 2), m(2, 0), m(0, 0), m(1, 0), m(0, 3), m(1, 3)};
    const double miss = (e.matrix() - m).cwiseAbs().maxCoeff();
    if (!(miss <= tol * std::max(1.0, m.cwiseAbs().maxCoeff())))
      throw NotInAlgebra("matrix leaves the span of F,G,H,P,Q,R (miss " + std::to_string(miss) + ")");
    return e;
  }

  Eigen::VectorXd vector() const { return Eigen::Map<const Eigen::VectorXd>(coeff.data(), 6); }
  static AlgebraElement from_vector(const Eigen::VectorXd& v) {
    AlgebraElement e;
    for (int i = 0; i < 6; ++i) e.coeff[i] = v(i);
    return e;
  }

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) {
    for (int i = 0; i < 6; ++i) a.coeff[i] += b.coeff[i];
    return a;
  }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) {
    for (int i = 0; i < 6; ++i) a.coeff[i] -= b.coeff[i];
    return a;
  }
  friend AlgebraElement operator*(double s, AlgebraElement a) {
    for (auto& c : a.coeff) c *= s;
    return a;
  }
};

/// Matrix commutator XY - YX, re-expressed in the generator basis.
inline AlgebraElement bracket(const AlgebraElement& X, const AlgebraElement& Y) {
  const Mat4 x = X.matrix(), y = Y.matrix();
  return AlgebraElement::from_matrix(x * y - y * x);
}

/// Finite-dimensional Lie algebra given by structure constants [e_i, e_j] = C(i,j,k) e_k.
class StructureTable {
public:
  StructureTable() = default;
  StructureTable(int dim, std::vector<std::string> names)
      : dim_(dim), names_(std::move(names)), c_(static_cast<size_t>(dim * dim * dim), 0.0) {}

  int dim() const { return dim_; }
  const std::vector<std::string>& names() const { return names_; }

  double operator()(int i, int j, int k) const { return c_[index(i, j, k)]; }

  /// Sets [e_i, e_j] = value e_k and the antisymmetric partner.
  void set(int i, int j, int k, double value) {
    c_[index(i, j, k)] = value;
    c_[index(j, i, k)] = -value;
  }

  Eigen::VectorXd bracket(int i, int j) const {
    Eigen::VectorXd v(dim_);
    for (int k = 0; k < dim_; ++k) v(k) = (*this)(i, j, k);
    return v;
  }

  Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim_);
    for (int i = 0; i < dim_; ++i) {
      if (x(i) == 0.0) continue;
      for (int j = 0; j < dim_; ++j) {
        if (y(j) == 0.0) continue;
        for (int k = 0; k < dim_; ++k) v(k) += x(i) * y(j) * (*this)(i, j, k);
      }
    }
    return v;
  }

  nlohmann::json to_json() const {
    nlohmann::json C = nlohmann::json::array();
    for (int i = 0; i < dim_; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int j = 0; j < dim_; ++j) {
        nlohmann::json col = nlohmann::json::array();
        for (int k = 0; k < dim_; ++k) col.push_back((*this)(i, j, k));
        row.push_back(col);
      }
      C.push_back(row);
    }
    return C;
  }

private:
  size_t index(int i, int j, int k) const { return static_cast<size_t>((i * dim_ + j) * dim_ + k); }

  int dim_ = 0;
  std::vector<std::string> names_;
  std::vector<double> c_;
};

/// Structure constants of the generator basis (F,G,H,P,Q,R) from matrix commutators.
inline StructureTable generator_table() {
  StructureTable t(6, {kGeneratorNames.begin(), kGeneratorNames.end()});
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) {
      const auto b = bracket(AlgebraElement::basis(Generator(i)), AlgebraElement::basis(Generator(j)));
      for (int k = 0; k < 6; ++k) t.set(i, j, k, b.coeff[k]);
    }
  return t;
}

// ---------------------------------------------------------------------------
// Orthonormal frame L1..L6

struct FrameParams {
  double alpha = 1.0, beta = 1.0, gamma = 1.0, delta = 1.0;

  void validate() const {
    if (!(alpha > 0 && beta > 0 && gamma > 0 && delta > 0))
      throw DomainViolation("frame parameters must be positive");
  }
};

enum class BracketMode { printed, derived };

/// Frame vectors L1..L6 as generator combinations:
/// L1 = (F+G)/(2 sqrt a), L2 = H/(2 sqrt a), L3 = (F-G)/(2 sqrt b),
/// L4 = P/sqrt g, L5 = Q/sqrt g, L6 = R/sqrt d.
inline std::array<AlgebraElement, 6> frame_generators(const FrameParams& p) {
  using G = Generator;
  const double sa = std::sqrt(p.alpha), sb = std::sqrt(p.beta), sg = std::sqrt(p.gamma),
               sd = std::sqrt(p.delta);
  const auto e = [](G g) { return AlgebraElement::basis(g); };
  return {(0.5 / sa) * (e(G::F) + e(G::G)), (0.5 / sa) * e(G::H), (0.5 / sb) * (e(G::F) - e(G::G)),
          (1.0 / sg) * e(G::P),             (1.0 / sg) * e(G::Q), (1.0 / sd) * e(G::R)};
}

inline StructureTable printed_frame_table(const FrameParams& p) {
  p.validate();
  const double sa = std::sqrt(p.alpha), sb = std::sqrt(p.beta);
  StructureTable t(6, {"L1", "L2", "L3", "L4", "L5", "L6"});
  // 0-based indices: Li -> i-1
  t.set(0, 1, 2, -sb / p.alpha);
  t.set(1, 2, 0, 1.0 / (2.0 * sb));
  t.set(2, 0, 1, 1.0 / sb);
  t.set(0, 3, 4, -1.0 / (2.0 * sa));
  t.set(0, 4, 3, -1.0 / (2.0 * sa));
  t.set(1, 3, 3, -1.0 / (2.0 * sa));
  t.set(1, 4, 4, 1.0 / (2.0 * sa));
  t.set(2, 3, 4, -1.0 / (2.0 * sa));
  t.set(2, 4, 3, 1.0 / (2.0 * sb));
  t.set(3, 4, 5, 2.0 * std::sqrt(p.delta) / p.gamma);
  return t;
}

inline StructureTable derived_frame_table(const FrameParams& p) {
  p.validate();
  const auto L = frame_generators(p);
  Eigen::Matrix<double, 6, 6> B;  // columns: L_i in generator coordinates
  for (int i = 0; i < 6; ++i) B.col(i) = L[i].vector();
  const auto lu = B.partialPivLu();
  StructureTable t(6, {"L1", "L2", "L3", "L4", "L5", "L6"});
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) {
      const Eigen::VectorXd c = lu.solve(bracket(L[i], L[j]).vector());
      for (int k = 0; k < 6; ++k) t.set(i, j, k, std::abs(c(k)) < 1e-15 ? 0.0 : c(k));
    }
  return t;
}

struct BracketDiscrepancy {
  int i = 0, j = 0;  // 0-based, i < j
  Eigen::VectorXd printed, derived;
};

/// Frame algebra with the inner product making L1..L6 orthonormal.
struct FrameAlgebra {
  FrameParams params;
  BracketMode mode = BracketMode::printed;
  StructureTable table;

  Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    return table.bracket(x, y);
  }
  static double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) { return x.dot(y); }
};

inline FrameAlgebra frame_algebra(const FrameParams& p, BracketMode mode) {
  return {p, mode, mode == BracketMode::printed ? printed_frame_table(p) : derived_frame_table(p)};
}

struct FrameBrackets {
  FrameAlgebra printed, derived;
  std::vector<BracketDiscrepancy> discrepancies;
};

inline FrameBrackets frame_brackets(const FrameParams& p, double tol = 1e-12) {
  FrameBrackets out{frame_algebra(p, BracketMode::printed), frame_algebra(p, BracketMode::derived), {}};
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) {
      Eigen::VectorXd a = out.printed.table.bracket(i, j), b = out.derived.table.bracket(i, j);
      if ((a - b).cwiseAbs().maxCoeff() > tol) out.discrepancies.push_back({i, j, a, b});
    }
  return out;
}

// ---------------------------------------------------------------------------
// Decompositions g = h + m

/// Subspace spanned by the columns of `basis`, in coordinates of the ambient table.
struct Subspace {
  Eigen::MatrixXd basis;

  static Subspace from_indices(const std::vector<int>& idx, int dim) {
    Subspace s{Eigen::MatrixXd::Zero(dim, static_cast<Eigen::Index>(idx.size()))};
    for (size_t c = 0; c < idx.size(); ++c) s.basis(idx[c], static_cast<Eigen::Index>(c)) = 1.0;
    return s;
  }
  int size() const { return static_cast<int>(basis.cols()); }
};

struct Decomposition {
  Subspace m, h;

  static Decomposition from_indices(const std::vector<int>& m, const std::vector<int>& h, int dim) {
    return {Subspace::from_indices(m, dim), Subspace::from_indices(h, dim)};
  }
};

/// Distance of v from span(S) (least-squares residual norm).
inline double distance_from_span(const Eigen::VectorXd& v, const Subspace& S) {
  if (S.size() == 0) return v.norm();
  const Eigen::VectorXd c = S.basis.colPivHouseholderQr().solve(v);
  return (S.basis * c - v).norm();
}

/// Component of v outside `target`, measured in the adapted basis [target | other].
/// When target + other spans the ambient space this is the coefficient norm on `other`.
inline double off_component(const Eigen::VectorXd& v, const Subspace& target, const Subspace& other) {
  if (other.size() == 0) return distance_from_span(v, target);
  Eigen::MatrixXd B(v.size(), target.size() + other.size());
  B << target.basis, other.basis;
  const Eigen::VectorXd c = B.colPivHouseholderQr().solve(v);
  const double outside = (B * c - v).norm();
  return std::max(outside, c.tail(other.size()).norm());
}

struct InclusionViolation {
  std::string inclusion;  // "[h,m]<m", "[h,h]<h", "[m,m]<h"
  int a = 0, b = 0;       // column indices within the respective subspaces
  Eigen::VectorXd value;  // the offending bracket
  double off = 0.0;
};

struct ClosureReport {
  bool holds = true;
  std::vector<InclusionViolation> violations;

  std::optional<InclusionViolation> witness() const {
    if (violations.empty()) return std::nullopt;
    return violations.front();
  }
};

namespace detail {
inline void check_inclusion(const StructureTable& t, const Subspace& A, const Subspace& B, bool same,
                            const Subspace& target, const Subspace& other, const std::string& name,
                            double tol, ClosureReport& rep) {
  for (int a = 0; a < A.size(); ++a)
    for (int b = same ? a + 1 : 0; b < B.size(); ++b) {
      const Eigen::VectorXd v = t.bracket(Eigen::VectorXd(A.basis.col(a)), Eigen::VectorXd(B.basis.col(b)));
      const double off = off_component(v, target, other);
      if (off > tol) {
        rep.holds = false;
        rep.violations.push_back({name, a, b, v, off});
      }
    }
}
} // namespace detail

/// [h, m] in m.
inline ClosureReport check_reductive(const Decomposition& d, const StructureTable& t, double tol = 1e-12) {
  ClosureReport rep;
  detail::check_inclusion(t, d.h, d.m, false, d.m, d.h, "[h,m]<m", tol, rep);
  return rep;
}

/// [h, h] in h, [h, m] in m, [m, m] in h.
inline ClosureReport check_symmetric(const Decomposition& d, const StructureTable& t, double tol = 1e-12) {
  ClosureReport rep;
  detail::check_inclusion(t, d.h, d.h, true, d.h, d.m, "[h,h]<h", tol, rep);
  detail::check_inclusion(t, d.h, d.m, false, d.m, d.h, "[h,m]<m", tol, rep);
  detail::check_inclusion(t, d.m, d.m, true, d.h, d.m, "[m,m]<h", tol, rep);
  return rep;
}

struct JacobiViolation {
  int i = 0, j = 0, k = 0;  // 0-based, i < j < k
  double residual = 0.0;
};

/// Triples with | [[ei,ej],ek] + [[ej,ek],ei] + [[ek,ei],ej] | above tol.
inline std::vector<JacobiViolation> jacobi_identity_audit(const StructureTable& t, double tol = 1e-10) {
  std::vector<JacobiViolation> out;
  const int n = t.dim();
  const auto e = [n](int i) { return Eigen::VectorXd(Eigen::VectorXd::Unit(n, i)); };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const Eigen::VectorXd r = t.bracket(t.bracket(i, j), e(k)) + t.bracket(t.bracket(j, k), e(i)) +
                                  t.bracket(t.bracket(k, i), e(j));
        const double res = r.cwiseAbs().maxCoeff();
        if (res > tol) out.push_back({i, j, k, res});
      }
  return out;
}

} // namespace jacobi
