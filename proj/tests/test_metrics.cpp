#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "jacobi/metrics.hpp"
#include "jacobi/numerics/random.hpp"
#include "test_support.hpp"

using namespace jacobi;

namespace {

Eigen::MatrixXd G(const MetricSpec& s, const Coords<double>& x) { return to_eigen(metric_coefficients(s, x), s.dim()); }

Eigen::MatrixXd J(Chart from, Chart to, const Coords<double>& x) {
  const auto j = chart_jacobian(from, to, x);
  Eigen::MatrixXd m(j.size(), j[0].size());
  for (std::size_t r = 0; r < j.size(); ++r)
    for (std::size_t c = 0; c < j[0].size(); ++c) m(r, c) = j[r][c];
  return m;
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

Coords<double> uhp_point(numerics::Sampler& s, std::size_t dim) {
  Coords<double> x{};
  for (std::size_t i = 0; i < dim; ++i) x[i] = s.uniform(-1.5, 1.5);
  x[1] = s.uniform(0.3, 2.5);
  return x;
}

std::array<double, 4> disk_point(numerics::Sampler& s) {
  const double r = s.uniform(0.0, 0.85), t = s.uniform(-3.0, 3.0);
  return {r * std::cos(t), r * std::sin(t), s.uniform(-1, 1), s.uniform(-1, 1)};
}

MetricSpec spec(MetricName n, MetricParams p = {}) { return {n, p}; }

} // namespace

TEST(Metrics, NamesAndCharts) {
  for (MetricName m : kAllMetrics) EXPECT_EQ(metric_from_name(metric_name(m)), m);
  EXPECT_EQ(spec(MetricName::gj1).dim(), 6u);
  EXPECT_EQ(spec(MetricName::xj1ext).chart(), Chart::xypqk);
  EXPECT_THROW(metric_from_name("flat"), Unsupported);
}

TEST(Metrics, ValidationRejectsNonPositive) {
  MetricParams p;
  p.alpha = -1.0;
  EXPECT_THROW(spec(MetricName::gj1, p).validate(), DomainViolation);
  EXPECT_NO_THROW(spec(MetricName::xj1_xypq, p).validate());  // alpha unused there
  p.c2 = 0.0;
  EXPECT_THROW(spec(MetricName::xj1_xypq, p).validate(), DomainViolation);
}

TEST(Metrics, WrongChartRejected) {
  const ChartPoint p(Chart::xypq, std::vector<double>{0, 1, 0, 0});
  EXPECT_THROW(metric_at(spec(MetricName::xj1_xyxr), p), IncompatibleChart);
  const auto v = metric_at(spec(MetricName::xj1_xypq), p);
  EXPECT_EQ(v.matrix.rows(), 4);
  const nlohmann::json j = v;
  EXPECT_EQ(j.at("order")[2], "p");
}

TEST(Metrics, ExplicitXypqCoefficients) {
  MetricParams pr;
  pr.c1 = 1.7, pr.c2 = 0.6;
  const Coords<double> x{0.4, 1.3, -0.2, 0.9, 0, 0};
  const auto g = G(spec(MetricName::xj1_xypq, pr), x);
  const double y = 1.3;
  EXPECT_NEAR(g(0, 0), 1.7 / (4 * y * y), 1e-15);
  EXPECT_NEAR(g(1, 1), 1.7 / (4 * y * y), 1e-15);
  EXPECT_NEAR(g(2, 2), 0.6 / y * (0.16 + y * y), 1e-15);
  EXPECT_NEAR(g(3, 3), 0.6 / y, 1e-15);
  EXPECT_NEAR(g(2, 3), 0.6 / y * 0.4, 1e-15);
  EXPECT_EQ(g(0, 2), 0.0);
}

TEST(Metrics, HalfPlaneChartsAgreeUnderChartChange) {
  MetricParams pr;
  pr.c1 = 2.3, pr.c2 = 0.7;
  numerics::Sampler s(31);
  for (int n = 0; n < 50; ++n) {
    const auto x = uhp_point(s, 4);
    // tau,z form and (x,y,xi,rho) form share coordinates
    EXPECT_LE(max_abs(G(spec(MetricName::xj1_tz, pr), x) - G(spec(MetricName::xj1_xyxr, pr), x)), 1e-13);
    const auto xr = transforms::change(Chart::xypq, Chart::xyxirho, x);
    const auto Jr = J(Chart::xypq, Chart::xyxirho, x);
    EXPECT_LE(max_abs(Jr.transpose() * G(spec(MetricName::xj1_xyxr, pr), xr) * Jr - G(spec(MetricName::xj1_xypq, pr), x)),
              1e-12);
    const auto xc = transforms::change(Chart::xypq, Chart::xychipsi, x);
    const auto Jc = J(Chart::xypq, Chart::xychipsi, x);
    EXPECT_LE(max_abs(Jc.transpose() * G(spec(MetricName::xj1_xycp, pr), xc) * Jc - G(spec(MetricName::xj1_xypq, pr), x)),
              1e-12);
  }
}

TEST(Metrics, ExtendedMetricExpandedForm) {
  // Oracle: the expanded coefficient list of the left-invariant metric on the extended space.
  MetricParams pr;
  pr.alpha = 0.8, pr.gamma = 1.9, pr.delta = 0.45;
  numerics::Sampler s(32);
  for (int n = 0; n < 20; ++n) {
    const auto c = uhp_point(s, 5);
    const double x = c[0], y = c[1], p = c[2], q = c[3];
    const double a = pr.alpha, g = pr.gamma, d = pr.delta;
    Eigen::MatrixXd want = Eigen::MatrixXd::Zero(5, 5);
    want(0, 0) = want(1, 1) = a / (y * y);
    want(2, 2) = g * (x * x + y * y) / y + d * q * q;
    want(3, 3) = g / y + d * p * p;
    want(4, 4) = d;
    want(2, 3) = want(3, 2) = g * x / y - d * p * q;
    want(2, 4) = want(4, 2) = d * q;
    want(3, 4) = want(4, 3) = -d * p;
    EXPECT_LE(max_abs(G(spec(MetricName::xj1ext, pr), c) - want), 1e-13);
  }
}

TEST(Metrics, GroupMetricReducesToExtendedWhenBetaVanishes) {
  MetricParams pr;
  pr.alpha = 1.4, pr.beta = 0.0, pr.gamma = 0.7, pr.delta = 2.2;
  const Coords<double> c6{0.3, 0.8, 1.1, -0.4, 0.6, 0.2};
  const Coords<double> c5{0.3, 0.8, -0.4, 0.6, 0.2, 0};
  const auto g6 = G(spec(MetricName::gj1, pr), c6);
  const auto g5 = G(spec(MetricName::xj1ext, pr), c5);
  const int keep[] = {0, 1, 3, 4, 5};
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(g6(2, keep[i]), 0.0);
    for (int j = 0; j < 5; ++j) EXPECT_NEAR(g6(keep[i], keep[j]), g5(i, j), 1e-15);
  }
}

TEST(Metrics, GroupMetricThetaTerms) {
  MetricParams pr;
  pr.beta = 0.3;
  const Coords<double> c{0.3, 0.8, 1.1, -0.4, 0.6, 0.2};
  const auto g = G(spec(MetricName::gj1, pr), c);
  EXPECT_NEAR(g(2, 2), 4 * 0.3, 1e-15);
  EXPECT_NEAR(g(0, 2), 2 * 0.3 / 0.8, 1e-15);
  EXPECT_NEAR(g(0, 0), 1 / 0.64 + 0.3 / 0.64, 1e-14);
}

TEST(Metrics, PositiveDefinite) {
  numerics::Sampler s(33);
  for (MetricName m : kAllMetrics) {
    const auto sp = spec(m);
    Coords<double> x = uhp_point(s, sp.dim());
    if (m == MetricName::disk_kahler) {
      const auto d = disk_point(s);
      x = {d[0], d[1], d[2], d[3], 0, 0};
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G(sp, x));
    EXPECT_GT(es.eigenvalues().minCoeff(), 0.0) << metric_name(m);
  }
}

TEST(Metrics, InvariantUnderTheAction) {
  numerics::Sampler s(34);
  MetricParams pr;
  pr.c1 = 1.3, pr.c2 = 0.8, pr.alpha = 0.9, pr.beta = 1.6, pr.gamma = 0.5, pr.delta = 1.2;
  for (MetricName m : {MetricName::xj1_tz, MetricName::xj1_xypq, MetricName::xj1_xyxr, MetricName::xj1_xycp,
                       MetricName::xj1ext, MetricName::gj1}) {
    const auto sp = spec(m, pr);
    for (int n = 0; n < 20; ++n) {
      const auto g = testing_support::random_element(s);
      const ChartPoint p(sp.chart(), uhp_point(s, sp.dim()));
      const auto back = pullback_under_action(sp, g, p);
      const auto here = metric_at(sp, p).matrix;
      EXPECT_LE(max_abs(back.matrix - here), 1e-9 * std::max(1.0, max_abs(here))) << metric_name(m);
    }
  }
  EXPECT_THROW(spec(MetricName::disk_kahler).space(), Unsupported);
}

TEST(DiskMetric, HermitianMatrixIsLeviFormOfPotential) {
  numerics::Sampler s(35);
  const double k = 1.7, nu = 0.6;
  const ComplexPairs cp{{2, 0}, {3, 1}};  // (z, w)
  for (int n = 0; n < 30; ++n) {
    const auto x = disk_point(s);
    const auto L = levi_form_of(
        [&](const auto& v) {
          using S = std::decay_t<decltype(v[0])>;
          return disk_potential(numerics::Cplx<S>(v[0], v[1]), numerics::Cplx<S>(v[2], v[3]), k, nu);
        },
        x, cp);
    const auto h = disk_hermitian(numerics::Cplx<double>(x[0], x[1]), numerics::Cplx<double>(x[2], x[3]), k, nu);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        EXPECT_NEAR(L[a][b].re, h[a][b].re, 1e-10);
        EXPECT_NEAR(L[a][b].im, h[a][b].im, 1e-10);
      }
  }
}

TEST(DiskMetric, CayleyPullbackIsHalfPlaneMetric) {
  numerics::Sampler s(36);
  const double k = 1.7, nu = 0.6;
  MetricParams dp;
  dp.k = k, dp.nu = nu;
  const auto hp = cayley_matched_c(k, nu);
  for (int n = 0; n < 30; ++n) {
    const auto x = uhp_point(s, 4);
    const auto w = transforms::change(Chart::uhp_vu, Chart::disk_wz, x);
    const auto Jd = J(Chart::uhp_vu, Chart::disk_wz, x);
    const Eigen::MatrixXd pulled = Jd.transpose() * G(spec(MetricName::disk_kahler, dp), w) * Jd;
    EXPECT_LE(max_abs(pulled - G(spec(MetricName::xj1_tz, hp), x)), 1e-10);
  }
}

TEST(DiskMetric, ParameterSubstitution) {
  const auto c = k_nu_to_c(3.0, 0.5);
  EXPECT_EQ(c.c1, 1.5);
  EXPECT_EQ(c.c2, 1.0);
  const auto back = c_to_k_nu(c.c1, c.c2);
  EXPECT_EQ(back.k, 3.0);
  EXPECT_EQ(back.nu, 0.5);
  // The plain substitution rescales the two parts by different factors (4 and 2), so it is
  // not the Cayley-matched pair.
  const auto m = cayley_matched_c(3.0, 0.5);
  EXPECT_EQ(m.c1 / c.c1, 4.0);
  EXPECT_EQ(c.c2 / m.c2, 2.0);
}

TEST(DiskMetric, KahlerConditionHoldsInWZ) {
  numerics::Sampler s(37);
  std::vector<std::array<double, 4>> pts;
  for (int n = 0; n < 200; ++n) pts.push_back(disk_point(s));
  const auto r = disk_kahler_condition(1.3, 0.9, pts);
  EXPECT_TRUE(r.pass) << r.max_residual;
  EXPECT_EQ(r.points, 200u);
}

TEST(DiskMetric, KahlerConditionFailsForIndependentEta) {
  numerics::Sampler s(38);
  std::vector<std::array<double, 4>> pts;
  for (int n = 0; n < 50; ++n) pts.push_back(disk_point(s));
  pts.push_back({0.5, 0.0, 0.2, 0.1});
  const auto r = disk_weta_kahler_condition(1.3, 0.9, pts);
  EXPECT_FALSE(r.pass);
  // Oracle: at (w, eta) the eta-w mismatch is |d(nu/P)/dw| = nu |w| / P^2.
  const double P = 0.75;
  EXPECT_GE(r.max_residual, 0.9 * 0.5 / (P * P) - 1e-12);
}

TEST(Kernel, ValueAndConstants) {
  EXPECT_NEAR(reproducing_kernel_uhp({0.0, 1.0}, {0.0, 0.0}, 3.0), 1.0, 1e-15);
  EXPECT_NEAR(reproducing_kernel_uhp({0.2, 2.0}, {0.1, 1.0}, 2.0), std::exp(std::numbers::pi) / 2.0, 1e-12);
  EXPECT_THROW(reproducing_kernel_uhp({0.0, -1.0}, {0.0, 0.0}, 1.0), DomainViolation);
  numerics::Sampler s(39);
  std::vector<std::array<double, 4>> pts;
  for (int n = 0; n < 20; ++n) {
    const auto x = uhp_point(s, 4);
    pts.push_back({x[0], x[1], x[2], x[3]});
  }
  for (double k : {1.0, 2.5}) {
    const auto f = kernel_constant_fit(k, pts);
    EXPECT_NEAR(f.c_k, 0.25, 1e-9);
    EXPECT_NEAR(f.c_nu, std::numbers::pi, 1e-9);
    EXPECT_LE(f.residual, 1e-9);
  }
}
