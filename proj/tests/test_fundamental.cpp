#include <gtest/gtest.h>

#include "filicoh/fundamental.hpp"
#include "testing.hpp"

using namespace filicoh;

namespace {

const Algebra& a4() {
  static const Algebra a = simple_algebra(3, {1, 1, 1, 1});
  return a;
}

const Algebra& a4a4() {
  static const Algebra a = direct_sum({a4(), a4()});
  return a;
}

QVector e(int d, int i) { return unit_vector(d, i - 1); }

FundamentalVector obj(const Algebra& a, std::vector<int> one_based) {
  for (int& i : one_based) --i;
  return fundamental(a, one_based);
}

/// Wedge coordinates of u ∧ v for n = 3 (pairs i < j).
QVector wedge2(const QVector& u, const QVector& v) {
  const MultiIndexBasis w(static_cast<int>(u.size()), 2, BasisMode::Wedge);
  QVector out(static_cast<Eigen::Index>(w.size()));
  for (std::size_t k = 0; k < w.size(); ++k) out(static_cast<Eigen::Index>(k)) = u(w[k][0]) * v(w[k][1]) - u(w[k][1]) * v(w[k][0]);
  return out;
}

}  // namespace

TEST(AdMatrix, Examples) {
  const QMatrix ad = ad_matrix(a4(), obj(a4(), {1, 2}));
  QMatrix expected = zero_matrix(4, 4);
  expected(3, 2) = Rational(-1);
  expected(2, 3) = Rational(1);
  EXPECT_EQ(ad, expected);
  EXPECT_TRUE(is_zero(ad_matrix(a4a4(), obj(a4a4(), {1, 5}))));
  const Algebra so3 = simple_algebra(2, {1, 1, 1});
  QMatrix ad1 = zero_matrix(3, 3);
  ad1(2, 1) = Rational(1);
  ad1(1, 2) = Rational(-1);
  EXPECT_EQ(ad_matrix(so3, obj(so3, {1})), ad1);
  EXPECT_THROW(ad_matrix(a4(), FundamentalVector{BasisMode::Tensor, zero_vector(16)}), InputError);
}

TEST(Compose, Examples) {
  const auto zero = compose(a4(), obj(a4(), {1, 2}), obj(a4(), {3, 4}));
  EXPECT_TRUE(is_zero(QMatrix(zero.coords)));
  const auto r = compose(a4(), obj(a4(), {1, 2}), obj(a4(), {2, 3}));
  EXPECT_EQ(r.coords, QVector(-obj(a4(), {2, 4}).coords));
  const Algebra so3 = simple_algebra(2, {1, 1, 1});
  EXPECT_EQ(compose(so3, obj(so3, {1}), obj(so3, {2})).coords, so3.bracket({e(3, 1), e(3, 2)}));
}

TEST(Compose, MatchesDecomposableExpansion) {
  auto g = prop::rng(21);
  const Algebra& a = a4a4();
  for (int t = 0; t < 50; ++t) {
    const QVector x1 = prop::random_vector(g, 8), x2 = prop::random_vector(g, 8);
    const QVector y1 = prop::random_vector(g, 8), y2 = prop::random_vector(g, 8);
    const FundamentalVector x{BasisMode::Wedge, wedge2(x1, x2)};
    const FundamentalVector y{BasisMode::Wedge, wedge2(y1, y2)};
    const QVector expected = wedge2(a.bracket({x1, x2, y1}), y2) + wedge2(y1, a.bracket({x1, x2, y2}));
    EXPECT_EQ(compose(a, x, y).coords, expected);
  }
}

TEST(Compose, Bilinear) {
  auto g = prop::rng(22);
  const FundamentalOps ops(a4a4());
  for (int t = 0; t < 30; ++t) {
    const FundamentalVector x{BasisMode::Wedge, prop::random_vector(g, 28)};
    const FundamentalVector x2{BasisMode::Wedge, prop::random_vector(g, 28)};
    const FundamentalVector y{BasisMode::Wedge, prop::random_vector(g, 28)};
    const Rational s = prop::small_rational(g);
    const FundamentalVector mix{BasisMode::Wedge, QVector(s * x.coords + x2.coords)};
    EXPECT_EQ(ops.compose(mix, y).coords, QVector(s * ops.compose(x, y).coords + ops.compose(x2, y).coords));
  }
}

TEST(FundamentalIdentities, ExhaustiveAndRandom) {
  const auto exhaustive = check_fundamental_identities(a4());
  EXPECT_TRUE(exhaustive.passed);
  EXPECT_EQ(exhaustive.checked, 216u);
  const auto sampled = check_fundamental_identities(a4a4(), 200, 7);
  EXPECT_TRUE(sampled.passed) << sampled.first_failure.value_or("");
  EXPECT_EQ(sampled.checked, 200u);
  EXPECT_TRUE(check_fundamental_identities(a4a4()).passed);
}

TEST(FundamentalIdentities, BrokenAlgebraFails) {
  Algebra broken = a4();
  broken.set_constant(std::vector<int>{0, 1, 2}, 0, Rational(1));
  const auto rep = check_fundamental_identities(broken);
  EXPECT_FALSE(rep.passed);
  EXPECT_TRUE(rep.first_failure);
}

TEST(FundamentalIdentities, AdIsACommutatorHomomorphism) {
  auto g = prop::rng(23);
  const FundamentalOps ops(a4a4());
  for (int t = 0; t < 30; ++t) {
    const FundamentalVector x{BasisMode::Wedge, prop::random_vector(g, 28)};
    const FundamentalVector y{BasisMode::Wedge, prop::random_vector(g, 28)};
    const QMatrix ax = ops.ad(x), ay = ops.ad(y);
    EXPECT_EQ(ops.ad(ops.compose(x, y)), QMatrix(ax * ay - ay * ax));
  }
}

TEST(AssociatedLie, Dimensions) {
  const auto euclid = associated_lie_algebra(a4());
  EXPECT_EQ(euclid.dim, 6u);
  EXPECT_TRUE(euclid.antisymmetric);
  EXPECT_TRUE(euclid.jacobi);
  EXPECT_TRUE(euclid.killing_negative_definite);
  const auto lorentz = associated_lie_algebra(simple_algebra(3, {1, 1, 1, -1}));
  EXPECT_EQ(lorentz.dim, 6u);
  EXPECT_TRUE(lorentz.jacobi);
  EXPECT_FALSE(lorentz.killing_negative_definite);
  Algebra solvable(3, 3);
  solvable.set_constant(std::vector<int>{0, 1, 2}, 0, Rational(1));
  const auto s = associated_lie_algebra(solvable);
  EXPECT_EQ(s.dim, 3u);
  EXPECT_TRUE(s.jacobi);
  EXPECT_EQ(associated_lie_algebra(a4a4()).dim, 12u);
}

TEST(AssociatedLeibniz, SimpleAlgebraIsAntisymmetric) {
  const NLeibnizAlgebra l = associated_leibniz_algebra(a4());
  EXPECT_EQ(l.dim(), 6);
  EXPECT_EQ(l.n(), 2);
  EXPECT_TRUE(l.is_antisymmetric());
  EXPECT_TRUE(check_leibniz_identity(l).passed);
}

TEST(AssociatedLeibniz, DirectSumWitness) {
  const NLeibnizAlgebra l = associated_leibniz_algebra(a4a4());
  EXPECT_EQ(l.dim(), 28);
  EXPECT_FALSE(l.is_antisymmetric());
  const auto rep = check_leibniz_identity(l);
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.checked, 28u * 28u * 28u);
  const auto xy = compose(a4a4(), obj(a4a4(), {1, 5}), obj(a4a4(), {2, 3}));
  const auto yx = compose(a4a4(), obj(a4a4(), {2, 3}), obj(a4a4(), {1, 5}));
  EXPECT_TRUE(is_zero(QMatrix(xy.coords)));
  EXPECT_EQ(yx.coords, QVector(-obj(a4a4(), {4, 5}).coords));
  EXPECT_EQ(l.basis_names()[3], "(e1,e5)");
}

TEST(AssociatedLeibniz, LieAlgebraIsItsOwnLeibnizAlgebra) {
  const Algebra so3 = simple_algebra(2, {1, 1, 1});
  NLeibnizAlgebra expected = as_leibniz(so3);
  NLeibnizAlgebra got = associated_leibniz_algebra(so3);
  got.set_basis_names(expected.basis_names());
  EXPECT_EQ(got, expected);
}

TEST(LeibnizIdentity, FilippovAlgebrasAsLeibniz) {
  const NLeibnizAlgebra l = as_leibniz(a4a4());
  EXPECT_TRUE(check_leibniz_identity(l).passed);
  EXPECT_TRUE(check_leibniz_identity(as_leibniz(simple_algebra(4, {1, 1, -1, 1, 1}))).passed);
  const NLeibnizAlgebra tensor = associated_leibniz_algebra(as_leibniz(a4()));
  EXPECT_EQ(tensor.dim(), 16);
  EXPECT_TRUE(check_leibniz_identity(tensor).passed);
  const FundamentalVector x = fundamental(as_leibniz(a4()), std::vector<int>{0, 1});
  EXPECT_EQ(ad_matrix(as_leibniz(a4()), x), ad_matrix(a4(), obj(a4(), {1, 2})));
}

TEST(LeibnizIdentity, RandomTensorFailsWithWitness) {
  auto g = prop::rng(24);
  NLeibnizAlgebra l(2, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) l.set_constant(std::vector<int>{i, j}, k, Rational(std::uniform_int_distribution<int>(-2, 2)(g)));
  const auto rep = check_leibniz_identity(l);
  EXPECT_FALSE(rep.passed);
  ASSERT_TRUE(rep.witness);
  EXPECT_FALSE(is_zero(QMatrix(rep.witness->residual)));
}
