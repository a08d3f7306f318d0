#pragma once

/**
 * @file geometry.hpp
 * @brief Levi-Civita connection, Killing equations, geodesics and the
 * orbit-versus-geodesic comparison for the metrics in metrics.hpp.
 */

#include <array>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "jacobi/actions.hpp"
#include "jacobi/algebra.hpp"
#include "jacobi/charts.hpp"
#include "jacobi/errors.hpp"
#include "jacobi/metrics.hpp"
#include "jacobi/numerics/dual.hpp"
#include "jacobi/numerics/rk4.hpp"

namespace jacobi {

/// Largest accepted condition number of the metric matrix.
inline constexpr double kMaxMetricCondition = 1e12;

/// Gamma^mu_{lambda chi} at a point.
struct Christoffel {
  std::size_t n = 0;
  std::array<std::array<std::array<double, kMaxDim>, kMaxDim>, kMaxDim> g{};

  double operator()(std::size_t mu, std::size_t l, std::size_t c) const { return g[mu][l][c]; }

  /// Gamma^mu_{lc} v^l v^c
  Coords<double> contract(const Coords<double>& v) const {
    Coords<double> out{};
    for (std::size_t mu = 0; mu < n; ++mu)
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t c = 0; c < n; ++c) out[mu] += g[mu][l][c] * v[l] * v[c];
    return out;
  }
};

namespace detail {

using GeoDual = numerics::Dual<double, kMaxDim>;

inline Coords<GeoDual> seed_coords(const Coords<double>& x) {
  Coords<GeoDual> s;
  for (std::size_t i = 0; i < kMaxDim; ++i) s[i] = GeoDual::variable(x[i], i);
  return s;
}

/// Cholesky factor of the n x n metric, after a conditioning check.
inline Eigen::LLT<Eigen::MatrixXd> factor_metric(const Eigen::MatrixXd& G) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > kMaxMetricCondition)
    throw SingularMetric("metric is not positive definite or is ill-conditioned (eigenvalues " +
                         std::to_string(lo) + ", " + std::to_string(hi) + ")");
  Eigen::LLT<Eigen::MatrixXd> llt(G);
  if (llt.info() != Eigen::Success) throw SingularMetric("Cholesky factorization failed");
  return llt;
}

} // namespace detail

/// Christoffel symbols of a metric given as a generic coefficient function
/// `metric(Coords<T>) -> MetricMatrix<T>` on an n-dimensional chart.
template <class MetricFn>
Christoffel christoffel_of(MetricFn&& metric, const Coords<double>& x, std::size_t n) {
  const MetricMatrix<detail::GeoDual> g = metric(detail::seed_coords(x));
  Eigen::MatrixXd G(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) G(i, j) = g[i][j].val;
  const auto llt = detail::factor_metric(G);
  Christoffel ch;
  ch.n = n;
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t c = l; c < n; ++c) {
      // first kind: Gamma_{s l c} = 1/2 (d_l g_sc + d_c g_sl - d_s g_lc)
      Eigen::VectorXd first(n);
      for (std::size_t s = 0; s < n; ++s) first(s) = 0.5 * (g[s][c].d[l] + g[s][l].d[c] - g[l][c].d[s]);
      const Eigen::VectorXd second = llt.solve(first);
      for (std::size_t mu = 0; mu < n; ++mu) ch.g[mu][l][c] = ch.g[mu][c][l] = second(mu);
    }
  return ch;
}

inline Christoffel christoffel(const MetricSpec& spec, const Coords<double>& x) {
  spec.validate();
  if (!in_chart_domain(spec.chart(), x)) throw DomainViolation("point outside the metric's chart");
  return christoffel_of([&](const auto& c) { return metric_coefficients(spec, c); }, x, spec.dim());
}

inline Christoffel christoffel(const MetricSpec& spec, const ChartPoint& pt) {
  if (pt.chart != spec.chart()) throw IncompatibleChart("point chart does not match the metric");
  return christoffel(spec, pt.coords);
}

/// max_{l,c} |X^mu d_mu g_lc + g_mc d_l X^mu + g_lm d_c X^mu| for generic metric and field functions.
template <class MetricFn, class FieldFn>
double killing_residual_of(MetricFn&& metric, FieldFn&& field, const Coords<double>& x, std::size_t n) {
  const auto s = detail::seed_coords(x);
  const MetricMatrix<detail::GeoDual> g = metric(s);
  const Coords<detail::GeoDual> X = field(s);
  double worst = 0.0;
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t c = 0; c < n; ++c) {
      double r = 0.0;
      for (std::size_t mu = 0; mu < n; ++mu)
        r += X[mu].val * g[l][c].d[mu] + g[mu][c].val * X[mu].d[l] + g[l][mu].val * X[mu].d[c];
      worst = std::max(worst, std::abs(r));
    }
  return worst;
}

inline double killing_residual(const MetricSpec& spec, const VectorFieldExpr& X, const Coords<double>& x) {
  spec.validate();
  if (X.chart != spec.chart())
    throw IncompatibleChart(std::string("field lives on ") + chart_name(X.chart) + ", metric on " +
                            chart_name(spec.chart()));
  return killing_residual_of([&](const auto& c) { return metric_coefficients(spec, c); }, X, x, spec.dim());
}

/// Killing residual of the FVF of a general algebra element.
inline double killing_residual(const MetricSpec& spec, Space space, const AlgebraElement& A, const Coords<double>& x,
                               GStarReading reading = GStarReading::completed) {
  spec.validate();
  const Chart chart = spec.chart();
  return killing_residual_of([&](const auto& c) { return metric_coefficients(spec, c); },
                             [&](const auto& c) { return fvf_combination(space, chart, A, c, reading); }, x,
                             spec.dim());
}

// ---------------------------------------------------------------------------
// Geodesics

struct Trajectory {
  Chart chart = Chart::xypq;
  std::vector<double> t;
  std::vector<Coords<double>> x;
  std::vector<Coords<double>> v;
  std::vector<double> energy;

  /// Largest |E(t) - E(0)| / max(|E(0)|, tiny).
  double relative_energy_drift() const {
    double d = 0.0;
    const double e0 = energy.front();
    for (double e : energy) d = std::max(d, std::abs(e - e0) / std::max(std::abs(e0), 1e-300));
    return d;
  }

  /// CSV with header t,<coordinates>,energy.
  std::string to_csv() const {
    std::ostringstream os;
    os.precision(17);
    const auto names = coordinate_names(chart);
    os << "t";
    for (const auto& n : names) os << "," << n;
    os << ",energy\n";
    for (std::size_t k = 0; k < t.size(); ++k) {
      os << t[k];
      for (std::size_t i = 0; i < names.size(); ++i) os << "," << x[k][i];
      os << "," << energy[k] << "\n";
    }
    return os.str();
  }
};

inline double kinetic_energy(const MetricSpec& spec, const Coords<double>& x, const Coords<double>& v) {
  const auto g = metric_coefficients(spec, x);
  double e = 0.0;
  for (std::size_t i = 0; i < spec.dim(); ++i)
    for (std::size_t j = 0; j < spec.dim(); ++j) e += g[i][j] * v[i] * v[j];
  return e;
}

/// RK4 integration of x'' + Gamma(x', x') = 0 over [0, t1]; LeftDomain when the chart domain is left.
inline Trajectory geodesic(const MetricSpec& spec, const ChartPoint& start, const std::vector<double>& velocity,
                           double t1, std::size_t steps) {
  spec.validate();
  const Chart chart = spec.chart();
  const std::size_t n = spec.dim();
  if (start.chart != chart) throw IncompatibleChart("start point chart does not match the metric");
  if (velocity.size() != n) throw IncompatibleChart("velocity has the wrong dimension");
  if (steps == 0) throw DomainViolation("geodesic needs at least one step");

  using State = numerics::State<2 * kMaxDim>;
  const auto split = [](const State& s, Coords<double>& x, Coords<double>& v) {
    for (std::size_t i = 0; i < kMaxDim; ++i) x[i] = s[i], v[i] = s[kMaxDim + i];
  };
  const auto rhs = [&](double, const State& s) {
    Coords<double> x, v;
    split(s, x, v);
    if (!in_chart_domain(chart, x)) throw LeftDomain("geodesic left the chart domain");
    const auto a = christoffel(spec, x).contract(v);
    State d{};
    for (std::size_t i = 0; i < n; ++i) d[i] = v[i], d[kMaxDim + i] = -a[i];
    return d;
  };

  State s{};
  for (std::size_t i = 0; i < n; ++i) s[i] = start.coords[i], s[kMaxDim + i] = velocity[i];
  Trajectory tr;
  tr.chart = chart;
  const double dt = t1 / static_cast<double>(steps);
  const auto record = [&](double t) {
    Coords<double> x, v;
    split(s, x, v);
    tr.t.push_back(t);
    tr.x.push_back(x);
    tr.v.push_back(v);
    tr.energy.push_back(kinetic_energy(spec, x, v));
  };
  record(0.0);
  for (std::size_t k = 0; k < steps; ++k) {
    s = numerics::rk4_step<2 * kMaxDim>(rhs, static_cast<double>(k) * dt, s, dt);
    Coords<double> x, v;
    split(s, x, v);
    for (std::size_t i = 0; i < n; ++i)
      if (!std::isfinite(x[i]) || !std::isfinite(v[i])) throw NonFinite("geodesic state is not finite");
    if (!in_chart_domain(chart, x)) throw LeftDomain("geodesic left the chart domain");
    record(static_cast<double>(k + 1) * dt);
  }
  return tr;
}

// ---------------------------------------------------------------------------
// Orbits of one-parameter subgroups

/// Step of the 5-point stencils used to differentiate orbit curves.
inline constexpr double kOrbitStep = 1e-3;

/// max over the grid of ||g'' + Gamma(g', g')||_inf for g(t) = exp(tX) . base.
inline double orbit_geodesic_residual(Space space, const MetricSpec& spec, const AlgebraElement& X,
                                      const ChartPoint& base, const std::vector<double>& grid) {
  double norm = 0.0;
  for (double c : X.coeff) norm = std::max(norm, std::abs(c));
  if (norm == 0.0) throw ZeroVector("orbit of the zero algebra element");
  spec.validate();
  const Chart chart = spec.chart();
  if (base.chart != chart) throw IncompatibleChart("base point chart does not match the metric");
  const std::size_t n = spec.dim();
  const double h = kOrbitStep;
  const auto orbit = [&](double t) { return act(space, chart, lift<double>(exp_algebra(t * X)), base.coords); };
  double worst = 0.0;
  for (double t : grid) {
    std::array<Coords<double>, 5> s;
    for (int k = -2; k <= 2; ++k) s[k + 2] = orbit(t + k * h);
    Coords<double> d1{}, d2{};
    for (std::size_t i = 0; i < n; ++i) {
      std::array<double, 5> u;
      for (int k = 0; k < 5; ++k) {
        u[k] = s[k][i] - s[2][i];
        if (space == Space::group && i == 2) u[k] = normalize_angle(u[k]);
      }
      d1[i] = (-u[4] + 8.0 * u[3] - 8.0 * u[1] + u[0]) / (12.0 * h);
      d2[i] = (-u[4] + 16.0 * u[3] - 30.0 * u[2] + 16.0 * u[1] - u[0]) / (12.0 * h * h);
    }
    const auto a = christoffel(spec, s[2]).contract(d1);
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(d2[i] + a[i]));
  }
  return worst;
}

} // namespace jacobi
