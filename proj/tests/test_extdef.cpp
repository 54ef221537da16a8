#include <gtest/gtest.h>

#include "filicoh/extdef.hpp"
#include "filicoh/trivialize.hpp"
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

/// d = 5, n = 3 with [e1,e2,e3] = e5 only.
Algebra nilpotent() {
  Algebra a(3, 5);
  a.set_constant(std::vector<int>{0, 1, 2}, 4, Rational(1));
  return a;
}

Cochain constants_as_cochain(const ComplexPtr& cx, const Algebra& source) {
  Cochain c = Cochain::zero(cx, 1);
  for (std::size_t k = 0; k < source.wedge().size(); ++k) {
    const MultiIndex& s = source.wedge()[k];
    for (const auto& [b, v] : source.constants(k)) c.set({MultiIndex(s.begin(), s.end() - 1)}, s.back(), b, v);
  }
  return c;
}

QMatrix random_symmetric(std::mt19937_64& g, int d) {
  QMatrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) m(i, j) = m(j, i) = prop::small_rational(g);
  return m;
}

}  // namespace

TEST(CentralExtension, SimpleExample) {
  const auto cx = make_complex(a4(), Action::Trivial);
  Cochain c = Cochain::zero(cx, 1);
  c.set({{0, 1}}, 2, 0, Rational(1));
  const auto ext = central_extend(a4(), c);
  EXPECT_EQ(ext.extended.dim(), 5);
  SparseVec<Rational> expected{{3, Rational(-1)}, {4, Rational(1)}};
  EXPECT_EQ(ext.extended.bracket_basis(std::vector<int>{0, 1, 2}), expected);
  EXPECT_TRUE(ext.extended.bracket_basis(std::vector<int>{0, 1, 4}).empty());
  EXPECT_TRUE(ext.fi.passed);
  EXPECT_EQ(ext.extended.basis_names().back(), "Xi");
}

TEST(CentralExtension, ZeroCochainAddsCenter) {
  const auto ext = central_extend(a4(), Cochain::zero(make_complex(a4(), Action::Trivial), 1));
  Algebra expected = direct_sum({a4(), abelian_algebra(3, 1)});
  expected.set_ideals(std::nullopt);
  expected.set_signature(std::nullopt);
  Algebra got = ext.extended;
  got.set_basis_names({});
  EXPECT_EQ(got, expected);
  EXPECT_TRUE(ext.fi.passed);
}

TEST(CentralExtension, FiPassesIffCocycle) {
  auto g = prop::rng(61);
  const Algebra nil = nilpotent();
  const auto cx = make_complex(nil, Action::Trivial);
  Cochain bad = Cochain::zero(cx, 1);
  bad.set({{0, 3}}, 4, 0, Rational(1));
  EXPECT_FALSE(is_cocycle(bad));
  const auto ext = central_extend(nil, bad);
  EXPECT_FALSE(ext.fi.passed);
  ASSERT_TRUE(ext.fi.witness.has_value());

  std::size_t cocycles = 0;
  std::size_t others = 0;
  const std::vector<Algebra> algs{a4(), nil, prop::random_fi_algebra(g, 3)};
  for (const auto& a : algs) {
    const auto c1 = make_complex(a, Action::Trivial);
    const auto basis = cocycle_basis(c1, 1);
    for (int i = 0; i < 30; ++i) {
      const Cochain c = i % 2 == 0 ? random_cochain(c1, 1, g) : random_combination(basis, c1, 1, g);
      const bool closed = is_cocycle(c);
      (closed ? cocycles : others) += 1;
      ASSERT_EQ(central_extend(a, c).fi.passed, closed);
    }
  }
  EXPECT_GT(cocycles, 0u);
  EXPECT_GT(others, 0u);
}

TEST(ExtensionTrivialization, SimpleExample) {
  const auto cx = make_complex(a4(), Action::Trivial);
  Cochain c = Cochain::zero(cx, 1);
  c.set({{0, 1}}, 2, 0, Rational(1));
  const auto ext = central_extend(a4(), c);
  Cochain beta = Cochain::zero(cx, 0);
  beta.coeffs(3) = Rational(1);
  const auto rep = trivialize_extension(ext, beta);
  EXPECT_TRUE(rep.success);
  EXPECT_EQ(rep.transformed.bracket_basis(std::vector<int>{0, 1, 2}), (SparseVec<Rational>{{3, Rational(-1)}}));
  EXPECT_TRUE(rep.residual.is_zero());

  const auto fail = trivialize_extension(ext, Cochain::zero(cx, 0));
  EXPECT_FALSE(fail.success);
  EXPECT_EQ(fail.residual, c);
}

TEST(ExtensionTrivialization, ResidualIsCMinusCoboundary) {
  auto g = prop::rng(62);
  const auto cx = make_complex(a4a4(), Action::Trivial);
  for (int i = 0; i < 5; ++i) {
    const Cochain c = random_cochain(cx, 1, g);
    const Cochain beta = random_cochain(cx, 0, g);
    const auto rep = trivialize_extension(central_extend(a4a4(), c), beta);
    EXPECT_EQ(rep.residual.coeffs, c.coeffs - coboundary(beta).coeffs);
  }
}

TEST(ExtensionTrivialization, SemisimpleCocycles) {
  auto g = prop::rng(63);
  const auto cx = make_complex(a4a4(), Action::Trivial);
  const auto basis = cocycle_basis(cx, 1);
  for (int i = 0; i < 5; ++i) {
    const Cochain c = random_combination(basis, cx, 1, g);
    EXPECT_TRUE(trivialize_extension(central_extend(a4a4(), c), trivialize_semisimple(c)).success);
  }
}

TEST(Deformation, Examples) {
  const auto ad = make_complex(a4(), Action::Adjoint);
  Cochain id = Cochain::zero(ad, 0);
  for (int k = 0; k < 4; ++k) id.coeffs(k * 4 + k) = Rational(1);
  const Deformation def = deform(a4(), coboundary(id));
  for (std::size_t k = 0; k < a4().wedge().size(); ++k)
    for (const auto& [b, v] : a4().constants(k)) {
      Series2 expected(v);
      expected[1] = Rational(2) * v;
      EXPECT_EQ(def.bracket.constant(k, b), expected);
    }

  const Deformation zero = deform(a4(), Cochain::zero(ad, 1));
  for (std::size_t k = 0; k < a4().wedge().size(); ++k)
    EXPECT_EQ(zero.bracket.constants(k), a4().cast<Series2>().constants(k));
  for (std::size_t k = 0; k < a4().wedge().size(); ++k)
    for (const auto& [b, v] : zero.bracket.constants(k)) EXPECT_TRUE(v[1].is_zero());

  const Algebra ab = abelian_algebra(3, 4);
  const Deformation lin = deform(ab, constants_as_cochain(make_complex(ab, Action::Adjoint), a4()));
  for (std::size_t k = 0; k < a4().wedge().size(); ++k)
    for (const auto& [b, v] : a4().constants(k)) EXPECT_EQ(lin.bracket.constant(k, b), Series2::monomial(1, v));
  EXPECT_THROW(deform(a4(), Cochain::zero(ad, 1), 3), InputError);
}

TEST(Deformation, ResidualOrders) {
  auto g = prop::rng(64);
  const auto ad = make_complex(a4(), Action::Adjoint);
  const auto ok = fi_residual_orders(deform(a4(), from_dual_coordinates(ad, random_symmetric(g, 4))));
  ASSERT_EQ(ok.size(), 2u);
  EXPECT_TRUE(ok[0].passed);
  EXPECT_TRUE(ok[1].passed);

  QMatrix m = zero_matrix(4, 4);
  m(0, 1) = Rational(1);
  m(1, 0) = Rational(-1);
  const auto bad = fi_residual_orders(deform(a4(), from_dual_coordinates(ad, m)));
  EXPECT_TRUE(bad[0].passed);
  EXPECT_FALSE(bad[1].passed);
  EXPECT_TRUE(bad[1].witness.has_value());

  const Algebra ab = abelian_algebra(3, 4);
  const auto lin = fi_residual_orders(deform(ab, constants_as_cochain(make_complex(ab, Action::Adjoint), a4()), 2));
  ASSERT_EQ(lin.size(), 3u);
  EXPECT_TRUE(lin[1].passed);
  EXPECT_TRUE(lin[2].passed);
}

TEST(Deformation, FirstOrderResidualIsCoboundary) {
  auto g = prop::rng(65);
  for (const Algebra& a : {a4(), prop::random_fi_algebra(g, 3)}) {
    const auto ad = make_complex(a, Action::Adjoint);
    const Cochain c = random_cochain(ad, 1, g);
    const Cochain dc = coboundary(c);
    const Deformation def = deform(a, c);
    for_each_fi_residual(def.bracket, [&](const MultiIndex& x, const MultiIndex& y, const Vec<Series2>& r) {
      const QVector v = dc.value({x, MultiIndex(y.begin(), y.end() - 1)}, y.back());
      for (int i = 0; i < a.dim(); ++i) ASSERT_EQ(r(i)[1], v(i));
    });
  }
}

TEST(Deformation, FirstOrderNullityIsCocycleDimension) {
  for (const Algebra& a : {a4(), simple_algebra(3, {1, -1, 1, -1})}) {
    const auto ad = make_complex(a, Action::Adjoint);
    const auto dim = ad->cochain_dim(1);
    std::vector<QVector> columns;
    for (std::size_t k = 0; k < dim; ++k) {
      Cochain c = Cochain::zero(ad, 1);
      c.coeffs(static_cast<Eigen::Index>(k)) = Rational(1);
      std::vector<Rational> col;
      for_each_fi_residual(deform(a, c).bracket, [&](const MultiIndex&, const MultiIndex&, const Vec<Series2>& r) {
        for (Eigen::Index i = 0; i < r.size(); ++i) col.push_back(r(i)[1]);
      });
      columns.push_back(Eigen::Map<QVector>(col.data(), static_cast<Eigen::Index>(col.size())));
    }
    QMatrix m(columns.front().size(), static_cast<Eigen::Index>(dim));
    for (std::size_t k = 0; k < dim; ++k) m.col(static_cast<Eigen::Index>(k)) = columns[k];
    EXPECT_EQ(dim - rank_kernel(m).rank, cohomology_dims(*ad, 1).dim_z);
  }
}

TEST(DeformationTrivialization, Coboundaries) {
  auto g = prop::rng(66);
  const auto ad = make_complex(a4(), Action::Adjoint);
  for (int i = 0; i < 5; ++i) {
    const Cochain beta = random_cochain(ad, 0, g);
    const auto rep = trivialize_deformation(deform(a4(), coboundary(beta)), beta);
    EXPECT_TRUE(rep.success);
    EXPECT_TRUE(rep.residual.is_zero());
  }
  for (int i = 0; i < 5; ++i) {
    const Cochain c = from_dual_coordinates(ad, random_symmetric(g, 4));
    EXPECT_TRUE(trivialize_deformation(deform(a4(), c), trivialize_adjoint_simple(c)).success);
  }
}

TEST(DeformationTrivialization, ResidualIsAlphaMinusCoboundary) {
  auto g = prop::rng(67);
  const auto ad = make_complex(a4(), Action::Adjoint);
  const Cochain c = random_cochain(ad, 1, g);
  const Cochain beta = random_cochain(ad, 0, g);
  const auto rep = trivialize_deformation(deform(a4(), c), beta);
  EXPECT_FALSE(rep.success);
  EXPECT_EQ(rep.residual.coeffs, c.coeffs - coboundary(beta).coeffs);
}

TEST(DeformationTrivialization, AbelianBaseIsNotRigid) {
  auto g = prop::rng(68);
  const Algebra ab = abelian_algebra(3, 4);
  const auto ad = make_complex(ab, Action::Adjoint);
  const Deformation def = deform(ab, constants_as_cochain(ad, a4()));
  for (int i = 0; i < 5; ++i) EXPECT_FALSE(trivialize_deformation(def, random_cochain(ad, 0, g)).success);
}

TEST(Obstruction, Examples) {
  const Algebra ab = abelian_algebra(3, 4);
  const auto rep = obstruction_cocycle(ab, constants_as_cochain(make_complex(ab, Action::Adjoint), a4()), true);
  EXPECT_TRUE(rep.gamma.is_zero());
  EXPECT_TRUE(rep.gamma_closed);
  EXPECT_EQ(rep.extends, std::optional<bool>(true));

  const auto ad = make_complex(a4(), Action::Adjoint);
  Cochain id = Cochain::zero(ad, 0);
  for (int k = 0; k < 4; ++k) id.coeffs(k * 4 + k) = Rational(1);
  const auto scaled = obstruction_cocycle(a4(), coboundary(id));
  EXPECT_TRUE(scaled.gamma_closed);

  QMatrix m = zero_matrix(4, 4);
  m(0, 1) = Rational(1);
  EXPECT_THROW(obstruction_cocycle(a4(), from_dual_coordinates(ad, m)), NotACocycle);
}

/// On A_4 the bracket f + t c keeps the form ε^{abck} M_{kj} with M symmetric,
/// which satisfies FI for every t, so γ vanishes.
TEST(Obstruction, SimpleCocyclesHaveZeroObstruction) {
  auto g = prop::rng(69);
  const auto ad = make_complex(a4(), Action::Adjoint);
  std::vector<Cochain> cs;
  for (int i = 0; i < 100; ++i) cs.push_back(from_dual_coordinates(ad, random_symmetric(g, 4)));
  for (const auto& r : obstruction_cocycles(a4(), cs)) {
    EXPECT_TRUE(r.gamma_closed);
    EXPECT_TRUE(r.gamma.is_zero());
  }
  for (int i = 0; i < 3; ++i) {
    const auto rep = obstruction_cocycle(a4(), cs[static_cast<std::size_t>(i)], true);
    EXPECT_EQ(rep.extends, std::optional<bool>(true));
    ASSERT_TRUE(rep.alpha2.has_value());
    EXPECT_TRUE(fi_residual_orders(deform(a4(), cs[static_cast<std::size_t>(i)], 2, rep.alpha2))[2].passed);
  }
}

TEST(Obstruction, SemisimpleCocyclesAreClosed) {
  auto g = prop::rng(70);
  const auto ad = make_complex(a4a4(), Action::Adjoint);
  const auto basis = cocycle_basis(ad, 1);
  std::vector<Cochain> cs;
  for (int i = 0; i < 10; ++i) cs.push_back(random_combination(basis, ad, 1, g));
  std::size_t nonzero = 0;
  for (const auto& r : obstruction_cocycles(a4a4(), cs)) {
    EXPECT_TRUE(r.gamma_closed);
    if (!r.gamma.is_zero()) ++nonzero;
  }
  EXPECT_GT(nonzero, 0u);
  const auto rep = obstruction_cocycle(a4a4(), cs.front(), true);
  EXPECT_FALSE(rep.gamma.is_zero());
  EXPECT_EQ(rep.extends, std::optional<bool>(true));
}
