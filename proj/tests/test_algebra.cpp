#include <cmath>

#include <gtest/gtest.h>

#include "jacobi/algebra.hpp"
#include "jacobi/numerics/random.hpp"

using namespace jacobi;
using G = Generator;

namespace {

AlgebraElement e(G g) { return AlgebraElement::basis(g); }

void expect_element(const AlgebraElement& got, const AlgebraElement& want) {
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(got.coeff[i], want.coeff[i], 1e-14) << kGeneratorNames[i];
}

// Brute-force oracle: is v in the column span of B? via the rank of [B v].
bool in_span(const Eigen::MatrixXd& B, const Eigen::VectorXd& v) {
  if (B.cols() == 0) return v.norm() < 1e-12;
  Eigen::MatrixXd A(B.rows(), B.cols() + 1);
  A << B, v;
  Eigen::FullPivLU<Eigen::MatrixXd> lb(B), la(A);
  lb.setThreshold(1e-10);
  la.setThreshold(1e-10);
  return lb.rank() == la.rank();
}

StructureTable sl2_table() {
  StructureTable t(3, {"F", "G", "H"});
  t.set(0, 1, 2, 1.0);   // [F,G] = H
  t.set(2, 0, 0, 2.0);   // [H,F] = 2F
  t.set(1, 2, 1, 2.0);   // [G,H] = 2G
  return t;
}

} // namespace

TEST(Bracket, CommutationRelations) {
  expect_element(bracket(e(G::P), e(G::Q)), 2.0 * e(G::R));
  expect_element(bracket(e(G::F), e(G::G)), e(G::H));
  expect_element(bracket(e(G::P), e(G::F)), e(G::Q));
  expect_element(bracket(e(G::Q), e(G::G)), e(G::P));
  expect_element(bracket(e(G::H), e(G::Q)), e(G::Q));
  expect_element(bracket(e(G::P), e(G::H)), e(G::P));
  expect_element(bracket(e(G::H), e(G::F)), 2.0 * e(G::F));
  expect_element(bracket(e(G::G), e(G::H)), 2.0 * e(G::G));
}

TEST(Bracket, SelfBracketVanishes) {
  for (int i = 0; i < 6; ++i) expect_element(bracket(e(G(i)), e(G(i))), AlgebraElement{});
}

TEST(Bracket, RIsCentral) {
  for (int i = 0; i < 6; ++i) expect_element(bracket(e(G::R), e(G(i))), AlgebraElement{});
}

TEST(Bracket, MatrixIsLinear) {
  numerics::Sampler s(11);
  AlgebraElement x, y;
  for (int i = 0; i < 6; ++i) x.coeff[i] = s.uniform(-1, 1), y.coeff[i] = s.uniform(-1, 1);
  const Mat4 lhs = (2.5 * x + (-1.5) * y).matrix();
  const Mat4 rhs = 2.5 * x.matrix() - 1.5 * y.matrix();
  EXPECT_EQ(lhs, rhs);
}

TEST(Bracket, JacobiIdentityInRealization) {
  numerics::Sampler s(12);
  for (int n = 0; n < 20; ++n) {
    AlgebraElement x, y, z;
    for (int i = 0; i < 6; ++i)
      x.coeff[i] = s.uniform(-1, 1), y.coeff[i] = s.uniform(-1, 1), z.coeff[i] = s.uniform(-1, 1);
    const auto r = bracket(bracket(x, y), z) + bracket(bracket(y, z), x) + bracket(bracket(z, x), y);
    for (double c : r.coeff) EXPECT_LE(std::abs(c), 1e-12);
  }
}

TEST(Bracket, HeisenbergIsAnIdeal) {
  const Decomposition d = Decomposition::from_indices({3, 4, 5}, {0, 1, 2}, 6);
  const auto t = generator_table();
  for (int i = 0; i < 6; ++i)
    for (int j = 3; j < 6; ++j) EXPECT_TRUE(in_span(d.m.basis, t.bracket(i, j)));
}

TEST(Bracket, NotInAlgebraDetected) {
  Mat4 m = Mat4::Zero();
  m(3, 0) = 1.0;
  EXPECT_THROW(AlgebraElement::from_matrix(m), NotInAlgebra);
}

TEST(FrameBrackets, PrintedLastRow) {
  for (const FrameParams p : {FrameParams{1, 1, 1, 1}, FrameParams{2.0, 0.5, 3.0, 1.7}}) {
    const auto t = printed_frame_table(p);
    EXPECT_DOUBLE_EQ(t(3, 4, 5), 2.0 * std::sqrt(p.delta) / p.gamma);
    EXPECT_DOUBLE_EQ(t(0, 1, 2), -std::sqrt(p.beta) / p.alpha);
    EXPECT_DOUBLE_EQ(t(2, 3, 4), -1.0 / (2.0 * std::sqrt(p.alpha)));
  }
}

TEST(FrameBrackets, AntisymmetricAndSelfZero) {
  const FrameParams p{1.3, 0.8, 2.1, 0.6};
  for (const auto& t : {printed_frame_table(p), derived_frame_table(p)})
    for (int i = 0; i < 6; ++i) {
      EXPECT_LE(t.bracket(i, i).norm(), 0.0);
      for (int j = 0; j < 6; ++j)
        for (int k = 0; k < 6; ++k) EXPECT_EQ(t(i, j, k), -t(j, i, k));
    }
}

TEST(FrameBrackets, DerivedModeDiscrepanciesAtUnitParameters) {
  // Oracle: brackets recomputed here from explicit 4x4 frame matrices.
  const FrameParams p{1, 1, 1, 1};
  const auto fb = frame_brackets(p);
  std::vector<Mat4> L(6);
  L[0] = 0.5 * (e(G::F) + e(G::G)).matrix();
  L[1] = 0.5 * e(G::H).matrix();
  L[2] = 0.5 * (e(G::F) - e(G::G)).matrix();
  L[3] = e(G::P).matrix();
  L[4] = e(G::Q).matrix();
  L[5] = e(G::R).matrix();
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      Mat4 expect = Mat4::Zero();
      for (int k = 0; k < 6; ++k) expect += fb.derived.table(i, j, k) * L[k];
      EXPECT_LE((L[i] * L[j] - L[j] * L[i] - expect).cwiseAbs().maxCoeff(), 1e-14);
    }
  ASSERT_EQ(fb.discrepancies.size(), 1u);  // only [L2,L3] at unit parameters
  EXPECT_EQ(fb.discrepancies[0].i, 1);
  EXPECT_EQ(fb.discrepancies[0].j, 2);
  EXPECT_NEAR(fb.discrepancies[0].printed(0), 0.5, 1e-15);
  EXPECT_NEAR(fb.discrepancies[0].derived(0), 1.0, 1e-15);
}

TEST(FrameBrackets, GeneralParametersAddL3L4Entry) {
  const auto fb = frame_brackets({2.0, 0.5, 3.0, 1.7});
  ASSERT_EQ(fb.discrepancies.size(), 2u);
  EXPECT_EQ(fb.discrepancies[1].i, 2);
  EXPECT_EQ(fb.discrepancies[1].j, 3);
  EXPECT_NEAR(fb.discrepancies[1].derived(4), -1.0 / (2.0 * std::sqrt(0.5)), 1e-14);
}

TEST(FrameBrackets, JsonTensorShape) {
  const auto j = printed_frame_table({}).to_json();
  ASSERT_EQ(j.size(), 6u);
  EXPECT_DOUBLE_EQ(j[3][4][5].get<double>(), 2.0);
  EXPECT_DOUBLE_EQ(j[4][3][5].get<double>(), -2.0);
}

TEST(Reductive, CentralR) {
  const auto d = Decomposition::from_indices({0, 1, 2, 3, 4}, {5}, 6);
  EXPECT_TRUE(check_reductive(d, generator_table()).holds);
}

TEST(Reductive, WholeAlgebraAsIsotropy) {
  const auto d = Decomposition::from_indices({}, {0, 1, 2, 3, 4, 5}, 6);
  EXPECT_TRUE(check_reductive(d, generator_table()).holds);
}

TEST(Reductive, RandomDecompositionsAgainstBruteForce) {
  const auto t = generator_table();
  numerics::Sampler s(13);
  for (int n = 0; n < 40; ++n) {
    std::vector<int> m, h;
    for (int i = 0; i < 6; ++i) (s.uniform() < 0.5 ? m : h).push_back(i);
    const auto d = Decomposition::from_indices(m, h, 6);
    bool brute = true;
    for (int a : h)
      for (int b : m) brute = brute && in_span(d.m.basis, t.bracket(a, b));
    EXPECT_EQ(check_reductive(d, t).holds, brute);
  }
}

TEST(Symmetric, CentralIsotropyFailsWithPFWitness) {
  const auto d = Decomposition::from_indices({0, 1, 2, 3, 4}, {5}, 6);
  const auto rep = check_symmetric(d, generator_table());
  EXPECT_FALSE(rep.holds);
  ASSERT_TRUE(rep.witness().has_value());
  bool found = false;
  for (const auto& v : rep.violations) {
    // m-columns: F=0, P=3; [F,P] = -Q
    if (v.inclusion == "[m,m]<h" && v.a == 0 && v.b == 3) {
      found = true;
      EXPECT_NEAR(v.value(4), -1.0, 1e-14);
    }
  }
  EXPECT_TRUE(found);
}

TEST(Symmetric, AbelianAlgebra) {
  const StructureTable t(4, {"a", "b", "c", "d"});
  EXPECT_TRUE(check_symmetric(Decomposition::from_indices({0, 1}, {2, 3}, 4), t).holds);
  EXPECT_TRUE(jacobi_identity_audit(t).empty());
}

TEST(Symmetric, Sl2CompactIsotropyAgainstBruteForce) {
  const auto t = sl2_table();
  Decomposition d;
  d.h.basis = Eigen::Vector3d(1, -1, 0);
  d.m.basis = (Eigen::MatrixXd(3, 2) << 1, 0, 1, 0, 0, 1).finished();
  bool brute = true;
  const auto col = [](const Eigen::MatrixXd& B, int c) { return Eigen::VectorXd(B.col(c)); };
  brute = brute && in_span(d.m.basis, t.bracket(col(d.h.basis, 0), col(d.m.basis, 0)));
  brute = brute && in_span(d.m.basis, t.bracket(col(d.h.basis, 0), col(d.m.basis, 1)));
  brute = brute && in_span(d.h.basis, t.bracket(col(d.m.basis, 0), col(d.m.basis, 1)));
  EXPECT_TRUE(brute);
  EXPECT_EQ(check_symmetric(d, t).holds, brute);
}

TEST(JacobiAudit, DerivedTableIsClean) {
  EXPECT_TRUE(jacobi_identity_audit(derived_frame_table({1.3, 0.8, 2.1, 0.6})).empty());
  EXPECT_TRUE(jacobi_identity_audit(generator_table()).empty());
}

TEST(JacobiAudit, PrintedTableAtUnitParameters) {
  // Oracle: residual of triple (L2,L3,L4) evaluated by hand from the printed entries.
  // [[L2,L3],L4] = 1/2 [L1,L4] = -1/4 L5; [[L3,L4],L2] = -1/2 [L5,L2] = -1/4 L5;
  // [[L4,L2],L3] = 1/2 [L4,L3] = 1/4 L5. Sum -1/4 L5.
  const auto v = jacobi_identity_audit(printed_frame_table({1, 1, 1, 1}));
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].i, 1);
  EXPECT_EQ(v[0].j, 2);
  EXPECT_EQ(v[0].k, 3);
  EXPECT_NEAR(v[0].residual, 0.25, 1e-15);
  EXPECT_EQ(v[1].k, 4);
}
