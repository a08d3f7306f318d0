#include <cmath>

#include <gtest/gtest.h>

#include "jacobi/errors.hpp"
#include "jacobi/numerics/cubic.hpp"
#include "jacobi/numerics/differentiate.hpp"
#include "jacobi/numerics/dual.hpp"
#include "jacobi/numerics/matrix_exp.hpp"
#include "jacobi/numerics/random.hpp"
#include "jacobi/numerics/rk4.hpp"

using namespace jacobi;
using namespace jacobi::numerics;

TEST(Diff, SquareAtThree) {
  auto f = [](const auto& x) { return x[0] * x[0]; };
  EXPECT_DOUBLE_EQ(diff<1>(f, {3.0})[0], 6.0);
}

TEST(Diff, Bilinear) {
  auto f = [](const auto& x) { return x[0] * x[1]; };
  const auto g = diff<2>(f, {2.0, 5.0});
  EXPECT_DOUBLE_EQ(g[0], 5.0);
  EXPECT_DOUBLE_EQ(g[1], 2.0);
}

TEST(Diff, DualMatchesFiniteDifferenceOnRationalCoefficient) {
  auto g = [](const auto& v) { return 1.3 / (4.0 * v[1] * v[1]) + 0.7 * (v[0] * v[0] + 1.0) / v[1]; };
  const std::array<double, 2> at{1.0, 2.0};
  const auto a = diff<2>(g, at, DiffMode::dual);
  const auto b = diff<2>(g, at, DiffMode::finite_difference);
  for (int i = 0; i < 2; ++i) EXPECT_NEAR(a[i], b[i], 1e-6 * std::max(1.0, std::abs(a[i])));
}

TEST(Diff, PolynomialsOfDegreeFourExact) {
  auto f = [](const auto& v) { return 3.0 * ipow(v[0], 4) - 2.0 * ipow(v[0], 3) * v[1] + v[1] * v[1] - 7.0; };
  const double x = 1.7, y = -0.3;
  const auto g = diff<2>(f, {x, y});
  EXPECT_NEAR(g[0], 12.0 * x * x * x - 6.0 * x * x * y, 1e-13);
  EXPECT_NEAR(g[1], -2.0 * x * x * x + 2.0 * y, 1e-13);
}

TEST(Diff, HessianOfCubic) {
  auto f = [](const auto& v) { return v[0] * v[0] * v[1] + sin(v[1]); };
  const auto H = hessian<2>(f, {0.5, 1.2});
  EXPECT_NEAR(H[0][0], 2.0 * 1.2, 1e-14);
  EXPECT_NEAR(H[0][1], 2.0 * 0.5, 1e-14);
  EXPECT_NEAR(H[1][0], 2.0 * 0.5, 1e-14);
  EXPECT_NEAR(H[1][1], -std::sin(1.2), 1e-14);
}

TEST(Diff, NonFiniteIsReported) {
  auto f = [](const auto& v) { return 1.0 / (v[0] - v[0]); };
  EXPECT_THROW(diff<1>(f, {1.0}, DiffMode::finite_difference), NonFinite);
}

TEST(Dual, ChainRuleMatchesFiniteDifference) {
  auto f = [](const auto& v) { return atan2(v[0], v[1]) * exp(v[0]) + log(v[1]) * sqrt(v[0] + 2.0) - cos(v[1]); };
  const std::array<double, 2> at{0.3, 1.9};
  const auto a = diff<2>(f, at);
  const auto b = diff<2>(f, at, DiffMode::finite_difference);
  for (int i = 0; i < 2; ++i) EXPECT_NEAR(a[i], b[i], 1e-8);
}

TEST(Rk4, ExponentialGrowth) {
  const auto traj = rk4_integrate<1>([](double, const State<1>& y) { return State<1>{y[0]}; }, {1.0}, 0.0, 1.0, 1000);
  EXPECT_NEAR(traj.back()[0], std::exp(1.0), 1e-10);
  EXPECT_EQ(traj.size(), 1001u);
}

TEST(Rk4, ZeroFieldIsConstant) {
  const auto traj = rk4_integrate<2>([](double, const State<2>&) { return State<2>{0.0, 0.0}; }, {2.0, -1.0}, 0.0, 3.0, 10);
  for (const auto& s : traj) {
    EXPECT_EQ(s[0], 2.0);
    EXPECT_EQ(s[1], -1.0);
  }
}

TEST(Rk4, FourthOrderConvergence) {
  auto f = [](double, const State<1>& y) { return State<1>{-2.0 * y[0]}; };
  const double exact = std::exp(-2.0);
  const double e1 = std::abs(rk4_integrate<1>(f, {1.0}, 0.0, 1.0, 20).back()[0] - exact);
  const double e2 = std::abs(rk4_integrate<1>(f, {1.0}, 0.0, 1.0, 40).back()[0] - exact);
  EXPECT_GE(e1 / e2, 14.0);
}

TEST(Rk4, HyperbolicGeodesicStaysOnUnitCircle) {
  // Geodesics of dx^2 + dy^2 over y^2:
  // x'' = 2 x' y' / y, y'' = (y'^2 - x'^2) / y.
  auto f = [](double, const State<4>& s) {
    const double x1 = s[2], y1 = s[3], y = s[1];
    return State<4>{x1, y1, 2.0 * x1 * y1 / y, (y1 * y1 - x1 * x1) / y};
  };
  const auto traj = rk4_integrate<4>(f, {0.0, 1.0, 1.0, 0.0}, 0.0, 2.0, 4000);
  for (const auto& s : traj) EXPECT_NEAR(s[0] * s[0] + s[1] * s[1], 1.0, 1e-8);
  // closed form: x = tanh t, y = sech t
  EXPECT_NEAR(traj.back()[0], std::tanh(2.0), 1e-9);
}

TEST(Rk4, LeavingDomainIsReported) {
  auto f = [](double, const State<1>&) { return State<1>{-1.0}; };
  EXPECT_THROW(rk4_integrate<1>(f, {0.5}, 0.0, 2.0, 100, [](const State<1>& s) { return s[0] > 0.0; }), NonFinite);
}

TEST(Cubic, RootOfRCubedPlusRMinusOne) {
  const Cubic F3{1.0, 0.0, 1.0, -1.0};
  const double r = cardano_real_root(F3);
  EXPECT_NEAR(r, 0.6823, 5e-4);
  EXPECT_LE(std::abs(F3(r)), 1e-14);
}

TEST(Cubic, UnitCube) { EXPECT_NEAR(cardano_real_root(Cubic{1.0, 0.0, 0.0, -1.0}), 1.0, 1e-15); }

TEST(Cubic, AgreesWithBisection) {
  const Cubic F3{1.0, 0.0, 1.0, -1.0};
  const double b = bisect([&](double r) { return r * r * r + r - 1.0; }, 0.0, 1.0);
  EXPECT_NEAR(cardano_real_root(F3), b, 1e-12);
}

TEST(Cubic, ThreeRealRootsNeedDisambiguation) {
  const Cubic c{1.0, 0.0, -3.0, 1.0};  // discriminant 81 > 0
  EXPECT_GT(c.discriminant(), 0.0);
  EXPECT_THROW(cardano_real_root(c), ThreeRealRoots);
  const double r = cardano_real_root(c, RootChoice::largest);
  // t = 2 cos(phi) turns the cubic into cos(3 phi) = -1/2
  EXPECT_NEAR(r, 2.0 * std::cos(2.0 * M_PI / 9.0), 1e-14);
}

TEST(MatrixExp, NilpotentAndDiagonal) {
  Eigen::Matrix3d N = Eigen::Matrix3d::Zero();
  N(0, 1) = 2.0;
  N(1, 2) = 3.0;
  const Eigen::Matrix3d E = expm(N);
  Eigen::Matrix3d expected = Eigen::Matrix3d::Identity() + N + 0.5 * N * N;
  EXPECT_LE((E - expected).cwiseAbs().maxCoeff(), 1e-13);

  const Eigen::Matrix2d D = Eigen::Vector2d(3.0, -1.5).asDiagonal();
  const Eigen::Matrix2d ED = expm(D);
  EXPECT_NEAR(ED(0, 0), std::exp(3.0), 1e-12 * std::exp(3.0));
  EXPECT_NEAR(ED(1, 1), std::exp(-1.5), 1e-14);
}

TEST(MatrixExp, Rotation) {
  Eigen::Matrix2d A;
  A << 0.0, -2.5, 2.5, 0.0;
  const Eigen::Matrix2d E = expm(A);
  EXPECT_NEAR(E(0, 0), std::cos(2.5), 1e-14);
  EXPECT_NEAR(E(1, 0), std::sin(2.5), 1e-14);
}

TEST(Sampler, Deterministic) {
  Sampler a(42), b(42);
  for (int i = 0; i < 10; ++i) {
    const double u = a.uniform();
    EXPECT_EQ(u, b.uniform());
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}
