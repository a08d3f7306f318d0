#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "jacobi/group.hpp"
#include "jacobi/numerics/random.hpp"
#include "test_support.hpp"

using namespace jacobi;

namespace {

double inf_norm(const Mat4& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace

TEST(Sl2, RejectsBadDeterminant) {
  EXPECT_THROW(Sl2Element(1.0, 0.0, 0.0, 1.0 + 1e-9), InvalidElement);
  EXPECT_NO_THROW(Sl2Element(2.0, 0.0, 0.0, 0.5));
}

TEST(Compose, IdentityIsNeutral) {
  numerics::Sampler s(1);
  const auto g = testing_support::random_element(s);
  const auto h = compose(g, GroupElement::identity());
  EXPECT_EQ(embed(h), embed(g));
}

TEST(Compose, MatchesMatrixProduct) {
  numerics::Sampler s(2);
  for (int n = 0; n < 100; ++n) {
    const auto g = testing_support::random_element(s);
    const auto h = testing_support::random_element(s);
    const Mat4 lhs = embed(compose(g, h));
    const Mat4 rhs = embed(g) * embed(h);
    EXPECT_LE(inf_norm(lhs - rhs), 1e-12 * std::max(1.0, inf_norm(rhs)));
  }
}

TEST(Compose, HeisenbergLaw) {
  GroupElement a, b;
  a.lambda = 0.3, a.mu = -1.2, a.kappa = 0.5;
  b.lambda = 2.0, b.mu = 0.7, b.kappa = -0.1;
  const auto c = compose(a, b);
  EXPECT_DOUBLE_EQ(c.lambda, 2.3);
  EXPECT_DOUBLE_EQ(c.mu, 0.7 - 1.2);
  EXPECT_NEAR(c.kappa, 0.5 - 0.1 + 0.3 * 0.7 - 2.0 * (-1.2), 1e-15);
}

TEST(Embed, IsSymplecticWithFixedPattern) {
  numerics::Sampler s(3);
  const Mat4 J = symplectic_form();
  for (int n = 0; n < 100; ++n) {
    const auto g = testing_support::random_element(s);
    const Mat4 m = embed(g);
    EXPECT_LE(inf_norm(m.transpose() * J * m - J), 1e-12 * std::max(1.0, inf_norm(m) * inf_norm(m)));
    EXPECT_EQ(m(0, 1), 0.0);
    EXPECT_EQ(m(2, 1), 0.0);
    EXPECT_EQ(m(1, 1), 1.0);
    EXPECT_EQ(m.row(3), Eigen::RowVector4d(0, 0, 0, 1));
    const auto back = from_matrix(m);
    EXPECT_NEAR(back.kappa, g.kappa, 1e-15);
  }
}

TEST(Inverse, IdentityAndMatrixInverse) {
  const auto e = inverse(GroupElement::identity());
  EXPECT_EQ(embed(e), Mat4::Identity());
  numerics::Sampler s(4);
  for (int n = 0; n < 100; ++n) {
    const auto g = testing_support::random_element(s);
    const Mat4 inv = embed(g).inverse();
    EXPECT_LE(inf_norm(embed(inverse(g)) - inv), 1e-12 * std::max(1.0, inf_norm(inv)));
    EXPECT_LE(inf_norm(embed(compose(g, inverse(g))) - Mat4::Identity()), 1e-11);
  }
}

TEST(Inverse, FourthColumn) {
  numerics::Sampler s(5);
  const auto g = testing_support::random_element(s);
  const Mat4 m = embed(inverse(g));
  EXPECT_NEAR(m(0, 3), -g.mu, 1e-12);
  EXPECT_NEAR(m(1, 3), -g.kappa, 1e-12);
  EXPECT_NEAR(m(2, 3), g.lambda, 1e-12);
  EXPECT_EQ(m(3, 3), 1.0);
}

TEST(Iwasawa, KnownValues) {
  const auto w0 = iwasawa(Sl2Element());
  EXPECT_EQ(w0.x, 0.0);
  EXPECT_EQ(w0.y, 1.0);
  EXPECT_EQ(w0.theta, 0.0);
  const auto w1 = iwasawa(Sl2Element(0.0, 1.0, -1.0, 0.0));
  EXPECT_NEAR(w1.x, 0.0, 1e-15);
  EXPECT_NEAR(w1.y, 1.0, 1e-15);
  EXPECT_NEAR(w1.theta, std::numbers::pi / 2.0, 1e-15);
}

TEST(Iwasawa, RoundTrip) {
  numerics::Sampler s(6);
  for (int n = 0; n < 100; ++n) {
    const auto M = testing_support::random_sl2(s);
    const auto w = iwasawa(M);
    EXPECT_GT(w.theta, -std::numbers::pi);
    EXPECT_LE(w.theta, std::numbers::pi);
    const auto back = from_iwasawa(w);
    EXPECT_NEAR(back.a, M.a, 1e-12 * std::max(1.0, std::abs(M.a)));
    EXPECT_NEAR(back.b, M.b, 1e-12 * std::max(1.0, std::abs(M.b)));
    EXPECT_NEAR(back.c, M.c, 1e-12 * std::max(1.0, std::abs(M.c)));
    EXPECT_NEAR(back.d, M.d, 1e-12 * std::max(1.0, std::abs(M.d)));
  }
}

TEST(Iwasawa, AngleIsTwoPiPeriodic) {
  const IwasawaCoords w{0.4, 1.7, 0.9};
  const auto a = from_iwasawa(w);
  const auto b = from_iwasawa(IwasawaCoords{0.4, 1.7, 0.9 + 2.0 * std::numbers::pi});
  EXPECT_NEAR(a.a, b.a, 1e-14);
  EXPECT_NEAR(a.d, b.d, 1e-14);
  // theta = pi belongs to the normalized range, -pi does not
  EXPECT_NEAR(iwasawa(Sl2Element(-1.0, 0.0, 0.0, -1.0)).theta, std::numbers::pi, 1e-15);
}

TEST(SCoords, IdentityBlockGivesPEqualsLambda) {
  GroupElement g;
  g.lambda = 0.8, g.mu = -0.4, g.kappa = 1.1;
  const auto sc = ez_to_s(g);
  EXPECT_EQ(sc.p, 0.8);
  EXPECT_EQ(sc.q, -0.4);
}

TEST(SCoords, RoundTripAndYTimesM) {
  numerics::Sampler s(7);
  for (int n = 0; n < 100; ++n) {
    const auto g = testing_support::random_element(s);
    const auto sc = ez_to_s(g);
    const auto back = s_to_ez(sc);
    EXPECT_LE(inf_norm(embed(back) - embed(g)), 1e-12 * std::max(1.0, inf_norm(embed(g))));
    // (lambda, mu) = (p, q) M
    EXPECT_NEAR(sc.p * g.M.a + sc.q * g.M.c, g.lambda, 1e-12 * std::max(1.0, std::abs(g.lambda)));
    EXPECT_NEAR(sc.p * g.M.b + sc.q * g.M.d, g.mu, 1e-12 * std::max(1.0, std::abs(g.mu)));
  }
}

TEST(Subgroups, Closed) {
  numerics::Sampler s(8);
  GroupElement h1, h2;
  h1.lambda = s.uniform(-1, 1), h1.mu = s.uniform(-1, 1), h1.kappa = s.uniform(-1, 1);
  h2.lambda = s.uniform(-1, 1), h2.mu = s.uniform(-1, 1), h2.kappa = s.uniform(-1, 1);
  const auto h = compose(h1, inverse(h2));
  EXPECT_EQ(h.M.a, 1.0);
  EXPECT_EQ(h.M.b, 0.0);
  EXPECT_EQ(h.M.c, 0.0);
  EXPECT_EQ(h.M.d, 1.0);
  GroupElement m1, m2;
  m1.M = testing_support::random_sl2(s);
  m2.M = testing_support::random_sl2(s);
  const auto m = compose(m1, inverse(m2));
  EXPECT_EQ(m.lambda, 0.0);
  EXPECT_EQ(m.mu, 0.0);
  EXPECT_EQ(m.kappa, 0.0);
}

TEST(Json, RoundTrip) {
  numerics::Sampler s(9);
  const auto g = testing_support::random_element(s);
  const nlohmann::json j = g;
  for (const char* k : {"a", "b", "c", "d", "lambda", "mu", "kappa"}) EXPECT_TRUE(j.contains(k));
  const auto back = j.get<GroupElement>();
  EXPECT_EQ(embed(back), embed(g));

  const SCoords sc{0.1, 2.0, -0.5, 0.3, 0.4, 0.5};
  const nlohmann::json js = sc;
  EXPECT_EQ(js.at("theta").get<double>(), -0.5);
  EXPECT_EQ(js.get<SCoords>().kappa, 0.5);
}
