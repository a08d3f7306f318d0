#pragma once

/**
 * @file metrics.hpp
 * @brief Invariant metrics on the Siegel-Jacobi spaces and the Jacobi group,
 * the Kaehler structure of the disk and the reproducing kernel on the half-plane.
 *
 * Metric matrices use the convention ds^2 = G_ij dx^i dx^j, so a cross term
 * 2a dx dy gives G_xy = G_yx = a.
 */

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "jacobi/actions.hpp"
#include "jacobi/charts.hpp"
#include "jacobi/errors.hpp"
#include "jacobi/numerics/complex.hpp"
#include "jacobi/numerics/differentiate.hpp"
#include "jacobi/numerics/dual.hpp"

namespace jacobi {

enum class MetricName {
  disk_kahler,  ///< Kaehler metric on the disk, parameters (k, nu), chart disk_wz
  xj1_tz,       ///< half-plane metric from (dtau, dz - p dtau), chart uhp_vu
  xj1_xypq,     ///< same metric in (x, y, p, q)
  xj1_xyxr,     ///< same metric in (x, y, xi, rho)
  xj1_xycp,     ///< same metric in (x, y, chi, psi)
  xj1ext,       ///< left-invariant metric on the extended space, (alpha, gamma, delta)
  gj1           ///< left-invariant metric on the group, (alpha, beta, gamma, delta)
};

inline constexpr std::array<MetricName, 7> kAllMetrics = {MetricName::disk_kahler, MetricName::xj1_tz,
                                                          MetricName::xj1_xypq,    MetricName::xj1_xyxr,
                                                          MetricName::xj1_xycp,    MetricName::xj1ext,
                                                          MetricName::gj1};

inline const char* metric_name(MetricName m) {
  switch (m) {
    case MetricName::disk_kahler: return "disk_kahler";
    case MetricName::xj1_tz: return "xj1_tz";
    case MetricName::xj1_xypq: return "xj1_xypq";
    case MetricName::xj1_xyxr: return "xj1_xyxr";
    case MetricName::xj1_xycp: return "xj1_xycp";
    case MetricName::xj1ext: return "xj1ext";
    case MetricName::gj1: return "gj1";
  }
  return "?";
}

inline MetricName metric_from_name(const std::string& n) {
  for (MetricName m : kAllMetrics)
    if (n == metric_name(m)) return m;
  throw Unsupported("unknown metric '" + n + "'");
}

struct MetricParams {
  double c1 = 1.0, c2 = 1.0;
  double alpha = 1.0, beta = 1.0, gamma = 1.0, delta = 1.0;
  double k = 1.0, nu = 1.0;
};

struct MetricSpec {
  MetricName name = MetricName::xj1_xypq;
  MetricParams params;

  Chart chart() const {
    switch (name) {
      case MetricName::disk_kahler: return Chart::disk_wz;
      case MetricName::xj1_tz: return Chart::uhp_vu;
      case MetricName::xj1_xypq: return Chart::xypq;
      case MetricName::xj1_xyxr: return Chart::xyxirho;
      case MetricName::xj1_xycp: return Chart::xychipsi;
      case MetricName::xj1ext: return Chart::xypqk;
      case MetricName::gj1: return Chart::xythetapqk;
    }
    return Chart::xypq;
  }
  std::size_t dim() const { return chart_dim(chart()); }

  /// Space acted on isometrically, if any.
  Space space() const {
    switch (name) {
      case MetricName::xj1ext: return Space::xj1ext;
      case MetricName::gj1: return Space::group;
      case MetricName::disk_kahler: throw Unsupported("the disk metric has no action in this library");
      default: return Space::xj1;
    }
  }

  /// Fails with DomainViolation when a parameter used by this metric is not positive.
  void validate() const {
    const auto need = [&](double v, const char* n) {
      if (!(v > 0.0) || !std::isfinite(v))
        throw DomainViolation(std::string("metric parameter ") + n + " must be positive, got " + std::to_string(v));
    };
    const auto& p = params;
    switch (name) {
      case MetricName::disk_kahler: need(p.k, "k"), need(p.nu, "nu"); break;
      case MetricName::xj1ext: need(p.alpha, "alpha"), need(p.gamma, "gamma"), need(p.delta, "delta"); break;
      case MetricName::gj1:
        need(p.alpha, "alpha"), need(p.beta, "beta"), need(p.gamma, "gamma"), need(p.delta, "delta");
        break;
      default: need(p.c1, "c1"), need(p.c2, "c2");
    }
  }
};

/// Substitution k = 2 c1, nu = c2 / 2 between disk and half-plane constants.
inline MetricParams k_nu_to_c(double k, double nu) {
  MetricParams p;
  p.k = k, p.nu = nu, p.c1 = k / 2.0, p.c2 = 2.0 * nu;
  return p;
}

inline MetricParams c_to_k_nu(double c1, double c2) {
  MetricParams p;
  p.c1 = c1, p.c2 = c2, p.k = 2.0 * c1, p.nu = c2 / 2.0;
  return p;
}

/// Half-plane constants whose metric is the Cayley pullback of the disk metric (k, nu):
/// c1 = 2k, c2 = nu.
inline MetricParams cayley_matched_c(double k, double nu) {
  MetricParams p;
  p.k = k, p.nu = nu, p.c1 = 2.0 * k, p.c2 = nu;
  return p;
}

template <class T>
using MetricMatrix = std::array<std::array<T, kMaxDim>, kMaxDim>;

template <class T>
using Hermitian2 = std::array<std::array<numerics::Cplx<T>, 2>, 2>;

namespace detail {

template <class T>
MetricMatrix<T> zero_matrix() {
  MetricMatrix<T> G;
  for (auto& r : G)
    for (auto& v : r) v = T(0.0);
  return G;
}

/// G += w l l^T
template <class T, std::size_t N>
void add_square(MetricMatrix<T>& G, const T& w, const std::array<T, N>& l) {
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) G[i][j] += w * l[i] * l[j];
}

} // namespace detail

/// Real symmetric matrix of Re(h_ab dzeta_a dzeta_b^*), zeta_a = x[re[a]] + i x[im[a]].
template <class T>
MetricMatrix<T> realify(const Hermitian2<T>& h, const std::array<std::size_t, 2>& re,
                        const std::array<std::size_t, 2>& im) {
  auto M = detail::zero_matrix<T>();
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      M[re[a]][re[b]] += h[a][b].re;
      M[im[a]][im[b]] += h[a][b].re;
      M[im[a]][re[b]] -= h[a][b].im;
      M[re[a]][im[b]] += h[a][b].im;
    }
  auto G = detail::zero_matrix<T>();
  for (std::size_t i = 0; i < kMaxDim; ++i)
    for (std::size_t j = 0; j < kMaxDim; ++j) G[i][j] = 0.5 * (M[i][j] + M[j][i]);
  return G;
}

/// Hermitian matrix of the disk metric in the order (z, w), eta = (z + conj(z) w)/P.
template <class T>
Hermitian2<T> disk_hermitian(const numerics::Cplx<T>& w, const numerics::Cplx<T>& z, double k, double nu) {
  using C = numerics::Cplx<T>;
  const T P = 1.0 - numerics::norm2(w);
  const C eta = (z + numerics::conj(z) * w) / C(P);
  Hermitian2<T> h;
  h[0][0] = C(nu / P);
  h[0][1] = C(nu / P) * eta;
  h[1][0] = C(nu / P) * numerics::conj(eta);
  h[1][1] = C(2.0 * k / (P * P) + nu * numerics::norm2(eta) / P);
  return h;
}

/// Same matrix read as a function of independent (w, eta), in the order (eta, w).
template <class T>
Hermitian2<T> disk_hermitian_weta(const numerics::Cplx<T>& w, const numerics::Cplx<T>& eta, double k, double nu) {
  using C = numerics::Cplx<T>;
  const T P = 1.0 - numerics::norm2(w);
  Hermitian2<T> h;
  h[0][0] = C(nu / P);
  h[0][1] = C(nu / P) * eta;
  h[1][0] = C(nu / P) * numerics::conj(eta);
  h[1][1] = C(2.0 * k / (P * P) + nu * numerics::norm2(eta) / P);
  return h;
}

/// Kaehler potential f = -2k log P + nu (2|z|^2 + conj(w) z^2 + w conj(z)^2) / (2P).
template <class T>
T disk_potential(const numerics::Cplx<T>& w, const numerics::Cplx<T>& z, double k, double nu) {
  using std::log;
  const T P = 1.0 - numerics::norm2(w);
  const numerics::Cplx<T> cross = numerics::conj(w) * z * z;
  return -2.0 * k * log(P) + nu * (2.0 * numerics::norm2(z) + 2.0 * cross.re) / (2.0 * P);
}

/// Metric coefficients in the chart of `spec`; unused slots are zero.
template <class T>
MetricMatrix<T> metric_coefficients(const MetricSpec& spec, const Coords<T>& c) {
  using numerics::Cplx;
  const auto& pr = spec.params;
  auto G = detail::zero_matrix<T>();
  const T zero(0.0), one(1.0);
  switch (spec.name) {
    case MetricName::disk_kahler: {
      const Cplx<T> w(c[0], c[1]), z(c[2], c[3]);
      return realify(disk_hermitian(w, z, pr.k, pr.nu), {2, 0}, {3, 1});
    }
    case MetricName::xj1_tz: {
      // c1 |dtau|^2/(4y^2) + (c2/y)|dz - p dtau|^2, p = Im z / y
      const T& y = c[1];
      const T p = c[3] / y;
      Hermitian2<T> h;
      const T w1 = pr.c1 / (4.0 * y * y), w2 = pr.c2 / y;
      h[0][0] = Cplx<T>(w1 + w2 * p * p);
      h[0][1] = Cplx<T>(-w2 * p);
      h[1][0] = Cplx<T>(-w2 * p);
      h[1][1] = Cplx<T>(w2);
      return realify(h, {0, 2}, {1, 3});
    }
    case MetricName::xj1_xypq: {
      const T &x = c[0], &y = c[1];
      detail::add_square(G, T(pr.c1 / (4.0 * y * y)), std::array<T, 2>{one, zero});
      detail::add_square(G, T(pr.c1 / (4.0 * y * y)), std::array<T, 2>{zero, one});
      detail::add_square(G, T(pr.c2 / y), std::array<T, 4>{zero, zero, x, one});
      detail::add_square(G, T(pr.c2 / y), std::array<T, 4>{zero, zero, y, zero});
      return G;
    }
    case MetricName::xj1_xyxr: {
      const T& y = c[1];
      const T p = c[3] / y;
      detail::add_square(G, T(pr.c1 / (4.0 * y * y)), std::array<T, 2>{one, zero});
      detail::add_square(G, T(pr.c1 / (4.0 * y * y)), std::array<T, 2>{zero, one});
      detail::add_square(G, T(pr.c2 / y), std::array<T, 4>{-p, zero, one, zero});
      detail::add_square(G, T(pr.c2 / y), std::array<T, 4>{zero, -p, zero, one});
      return G;
    }
    case MetricName::xj1_xycp: {
      const T &x = c[0], &y = c[1];
      detail::add_square(G, T(pr.c1 / (4.0 * y * y)), std::array<T, 2>{one, zero});
      detail::add_square(G, T(pr.c1 / (4.0 * y * y)), std::array<T, 2>{zero, one});
      detail::add_square(G, T(pr.c2 / y), std::array<T, 4>{zero, zero, one, x});
      detail::add_square(G, T(pr.c2 / y), std::array<T, 4>{zero, zero, zero, y});
      return G;
    }
    case MetricName::xj1ext: {
      // (alpha/y^2)(dx^2+dy^2) + (gamma/y)[(x dp + dq)^2 + y^2 dp^2] + delta (dkappa + q dp - p dq)^2
      const T &x = c[0], &y = c[1], &p = c[2], &q = c[3];
      detail::add_square(G, T(pr.alpha / (y * y)), std::array<T, 2>{one, zero});
      detail::add_square(G, T(pr.alpha / (y * y)), std::array<T, 2>{zero, one});
      detail::add_square(G, T(pr.gamma / y), std::array<T, 4>{zero, zero, x, one});
      detail::add_square(G, T(pr.gamma / y), std::array<T, 4>{zero, zero, y, zero});
      detail::add_square(G, T(pr.delta), std::array<T, 5>{zero, zero, q, -p, one});
      return G;
    }
    case MetricName::gj1: {
      // alpha(dx^2+dy^2)/y^2 + beta(dx/y + 2 dtheta)^2 + (gamma/y)[dq^2 + (x^2+y^2)dp^2 + 2x dp dq]
      //   + delta(dkappa - p dq + q dp)^2, order (x, y, theta, p, q, kappa)
      const T &x = c[0], &y = c[1], &p = c[3], &q = c[4];
      detail::add_square(G, T(pr.alpha / (y * y)), std::array<T, 2>{one, zero});
      detail::add_square(G, T(pr.alpha / (y * y)), std::array<T, 2>{zero, one});
      detail::add_square(G, T(pr.beta), std::array<T, 3>{one / y, zero, T(2.0)});
      detail::add_square(G, T(pr.gamma / y), std::array<T, 5>{zero, zero, zero, x, one});
      detail::add_square(G, T(pr.gamma / y), std::array<T, 5>{zero, zero, zero, y, zero});
      detail::add_square(G, T(pr.delta), std::array<T, 6>{zero, zero, zero, q, -p, one});
      return G;
    }
  }
  return G;
}

inline Eigen::MatrixXd to_eigen(const MetricMatrix<double>& G, std::size_t n) {
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = G[i][j];
  return m;
}

struct MetricValue {
  Chart chart = Chart::xypq;
  std::vector<std::string> order;
  Eigen::MatrixXd matrix;
};

inline void to_json(nlohmann::json& j, const MetricValue& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.matrix.rows(); ++i) {
    nlohmann::json r = nlohmann::json::array();
    for (Eigen::Index k = 0; k < m.matrix.cols(); ++k) r.push_back(m.matrix(i, k));
    rows.push_back(r);
  }
  j = {{"chart", chart_name(m.chart)}, {"order", m.order}, {"matrix", rows}};
}

/// Metric matrix at a point; the point must be in the metric's chart.
inline MetricValue metric_at(const MetricSpec& spec, const ChartPoint& pt) {
  spec.validate();
  if (pt.chart != spec.chart())
    throw IncompatibleChart(std::string("metric ") + metric_name(spec.name) + " lives on chart " +
                            chart_name(spec.chart()) + ", got " + chart_name(pt.chart));
  const std::size_t n = spec.dim();
  return {pt.chart, coordinate_names(pt.chart), to_eigen(metric_coefficients(spec, pt.coords), n)};
}

/// J^T G(phi(x)) J for a chart map phi with Jacobian J (rows: target, cols: source).
inline Eigen::MatrixXd pullback_metric(const Eigen::MatrixXd& G_target, const Eigen::MatrixXd& J) {
  return J.transpose() * G_target * J;
}

/// Metric at g.x pulled back along x -> g.x; equals the metric at x when the action is isometric.
inline MetricValue pullback_under_action(const MetricSpec& spec, const GroupElement& g, const ChartPoint& pt) {
  spec.validate();
  const Space space = spec.space();
  const Chart chart = spec.chart();
  if (pt.chart != chart) throw IncompatibleChart("point chart does not match the metric");
  const std::size_t n = spec.dim();
  using D = numerics::Dual<double, kMaxDim>;
  Coords<D> x;
  for (std::size_t i = 0; i < kMaxDim; ++i) x[i] = D::variable(pt.coords[i], i);
  const Coords<D> y = act(space, chart, lift<D>(g), x);
  Eigen::MatrixXd J(n, n);
  Coords<double> yv{};
  for (std::size_t i = 0; i < n; ++i) {
    yv[i] = y[i].val;
    for (std::size_t j = 0; j < n; ++j) J(i, j) = y[i].d[j];
  }
  const Eigen::MatrixXd Gy = to_eigen(metric_coefficients(spec, yv), n);
  return {chart, coordinate_names(chart), pullback_metric(Gy, J)};
}

// ---------------------------------------------------------------------------
// Kaehler structure

/// Complex coordinates zeta_a = x[re[a]] + i x[im[a]] of a 4-real-dimensional chart.
struct ComplexPairs {
  std::array<std::size_t, 2> re{0, 2};
  std::array<std::size_t, 2> im{1, 3};
};

/// h_ab = d_a dbar_b f from the real Hessian H of f.
inline Hermitian2<double> levi_form(const std::array<std::array<double, 4>, 4>& H, const ComplexPairs& cp) {
  Hermitian2<double> h;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      const std::size_t ra = cp.re[a], ia = cp.im[a], rb = cp.re[b], ib = cp.im[b];
      h[a][b] = {0.25 * (H[ra][rb] + H[ia][ib]), 0.25 * (H[ra][ib] - H[ia][rb])};
    }
  return h;
}

/// Levi form of a real function f(std::array<S,4>) at x.
template <class F>
Hermitian2<double> levi_form_of(F&& f, const std::array<double, 4>& x, const ComplexPairs& cp) {
  return levi_form(numerics::hessian<4>(f, x), cp);
}

/// max_{a<c, b} |d_c h_{a bbar} - d_a h_{c bbar}| with holomorphic Wirtinger derivatives.
/// `field` maps std::array<Dual<double,4>,4> to Hermitian2<Dual<double,4>>.
template <class Field>
double kahler_residual(Field&& field, const std::array<double, 4>& x, const ComplexPairs& cp) {
  using D = numerics::Dual<double, 4>;
  const Hermitian2<D> h = field(numerics::seed(x));
  // d_c of entry e = 1/2 (d_re - i d_im)(e.re + i e.im)
  const auto holo = [&](const numerics::Cplx<D>& e, std::size_t c) {
    const std::size_t r = cp.re[c], i = cp.im[c];
    return Complex(0.5 * (e.re.d[r] + e.im.d[i]), 0.5 * (e.im.d[r] - e.re.d[i]));
  };
  double worst = 0.0;
  for (std::size_t b = 0; b < 2; ++b) worst = std::max(worst, std::abs(holo(h[0][b], 1) - holo(h[1][b], 0)));
  return worst;
}

struct KahlerReport {
  bool pass = false;
  double max_residual = 0.0;
  std::size_t points = 0;
};

template <class Field>
KahlerReport kahler_condition(Field&& field, const std::vector<std::array<double, 4>>& points, const ComplexPairs& cp,
                              double tol = 1e-8) {
  KahlerReport r;
  for (const auto& x : points) r.max_residual = std::max(r.max_residual, kahler_residual(field, x, cp));
  r.points = points.size();
  r.pass = r.max_residual <= tol;
  return r;
}

/// Kaehler condition of the disk metric in (w, z); coordinates (Re w, Im w, Re z, Im z).
inline KahlerReport disk_kahler_condition(double k, double nu, const std::vector<std::array<double, 4>>& points,
                                          double tol = 1e-8) {
  using D = numerics::Dual<double, 4>;
  const auto field = [&](const std::array<D, 4>& x) {
    return disk_hermitian(numerics::Cplx<D>(x[0], x[1]), numerics::Cplx<D>(x[2], x[3]), k, nu);
  };
  return kahler_condition(field, points, ComplexPairs{{2, 0}, {3, 1}}, tol);
}

/// The same matrix with z replaced by an independent eta; (Re w, Im w, Re eta, Im eta).
inline KahlerReport disk_weta_kahler_condition(double k, double nu,
                                               const std::vector<std::array<double, 4>>& points, double tol = 1e-8) {
  using D = numerics::Dual<double, 4>;
  const auto field = [&](const std::array<D, 4>& x) {
    return disk_hermitian_weta(numerics::Cplx<D>(x[0], x[1]), numerics::Cplx<D>(x[2], x[3]), k, nu);
  };
  return kahler_condition(field, points, ComplexPairs{{2, 0}, {3, 1}}, tol);
}

// ---------------------------------------------------------------------------
// Reproducing kernel on the half-plane

/// K(tau, z) on the diagonal: y^{-k/2} exp(2 pi rho^2 / y).
inline double reproducing_kernel_uhp(Complex tau, Complex z, double k) {
  const double y = tau.imag();
  if (!(y > 0.0)) throw DomainViolation("Im tau must be positive");
  return std::pow(y, -k / 2.0) * std::exp(2.0 * std::numbers::pi * z.imag() * z.imag() / y);
}

template <class T>
T log_kernel_uhp(const std::array<T, 4>& x, double k) {
  using std::log;
  return -0.5 * k * log(x[1]) + 2.0 * std::numbers::pi * x[3] * x[3] / x[1];
}

/// k-part (k/(2y^2) dtau dtau^*) and nu-part ((nu/y)|dz - (rho/y) dtau|^2) of the half-plane
/// Kaehler form, as Hermitian matrices in the order (tau, z).
inline std::pair<Hermitian2<double>, Hermitian2<double>> uhp_form_parts(const std::array<double, 4>& x, double k,
                                                                        double nu) {
  const double y = x[1], p = x[3] / y;
  Hermitian2<double> hk{}, hn{};
  hk[0][0] = {k / (2.0 * y * y), 0.0};
  hn[0][0] = {nu * p * p / y, 0.0};
  hn[0][1] = hn[1][0] = {-nu * p / y, 0.0};
  hn[1][1] = {nu / y, 0.0};
  return {hk, hn};
}

struct KernelFit {
  double c_k = 0.0;
  double c_nu = 0.0;
  double residual = 0.0;  // max entry deviation of the fitted combination
};

/// Least-squares constants with Levi(log K) = c_k (k-part) + c_nu (nu-part), nu = 1.
inline KernelFit kernel_constant_fit(double k, const std::vector<std::array<double, 4>>& points) {
  const ComplexPairs cp{{0, 2}, {1, 3}};
  std::vector<std::array<double, 3>> rows;  // (a, b, target)
  for (const auto& x : points) {
    const auto L = levi_form_of([&](const auto& v) { return log_kernel_uhp(v, k); }, x, cp);
    const auto [hk, hn] = uhp_form_parts(x, k, 1.0);
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b) {
        rows.push_back({hk[a][b].re, hn[a][b].re, L[a][b].re});
        rows.push_back({hk[a][b].im, hn[a][b].im, L[a][b].im});
      }
  }
  Eigen::MatrixXd A(rows.size(), 2);
  Eigen::VectorXd t(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) A(i, 0) = rows[i][0], A(i, 1) = rows[i][1], t(i) = rows[i][2];
  const Eigen::Vector2d c = A.colPivHouseholderQr().solve(t);
  KernelFit f{c(0), c(1), (A * c - t).cwiseAbs().maxCoeff()};
  return f;
}

} // namespace jacobi
