#include <algorithm>
#include <numeric>

#include <gtest/gtest.h>

#include "filicoh/combinatorics.hpp"
#include "filicoh/linalg.hpp"
#include "testing.hpp"

using namespace filicoh;

namespace {

QMatrix mat(std::initializer_list<std::initializer_list<int>> rows) {
  QMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (int v : r) m(i, j++) = Rational(v);
    ++i;
  }
  return m;
}

bool annihilates(const QMatrix& a, const QVector& v) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Rational s(0);
    for (Eigen::Index j = 0; j < a.cols(); ++j) s += a(i, j) * v(j);
    if (!s.is_zero()) return false;
  }
  return true;
}

}  // namespace

TEST(Rational, LowestTermsAndSign) {
  const Rational q(6, -4);
  EXPECT_EQ(q.to_string(), "-3/2");
  EXPECT_EQ(Rational(0, 7).to_string(), "0");
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_EQ(Rational(2, 3) * Rational(3, 2), Rational(1));
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
  EXPECT_LT(Rational(-1, 2), Rational(1, 3));
}

TEST(Rational, PromotesAndDemotesAcrossInt64) {
  Rational big(1);
  for (int i = 0; i < 5; ++i) big *= Rational(1000000000000LL);
  EXPECT_FALSE(big.is_small());
  EXPECT_EQ(big.to_string(), "1" + std::string(60, '0'));
  Rational back = big;
  for (int i = 0; i < 5; ++i) back /= Rational(1000000000000LL);
  EXPECT_TRUE(back.is_small());
  EXPECT_EQ(back, Rational(1));
  EXPECT_EQ(Rational::parse("-12/8"), Rational(-3, 2));
  EXPECT_EQ(Rational::parse("123456789012345678901234567890").to_string(), "123456789012345678901234567890");
}

TEST(Rational, AgreesWithGmpOnRandomExpressions) {
  auto g = prop::rng(1);
  std::uniform_int_distribution<long long> v(-(1LL << 61), 1LL << 61);
  for (int t = 0; t < 2000; ++t) {
    const long long a = v(g), b = v(g) | 1, c = v(g), e = v(g) | 1;
    const Rational x(a, b), y(c, e);
    const mpq_class px(mpz_class(std::to_string(a)), mpz_class(std::to_string(b)));
    const mpq_class py(mpz_class(std::to_string(c)), mpz_class(std::to_string(e)));
    mpq_class qx = px, qy = py;
    qx.canonicalize();
    qy.canonicalize();
    EXPECT_EQ((x + y).to_mpq(), mpq_class(qx + qy));
    EXPECT_EQ((x - y).to_mpq(), mpq_class(qx - qy));
    EXPECT_EQ((x * y).to_mpq(), mpq_class(qx * qy));
    if (c != 0) EXPECT_EQ((x / y).to_mpq(), mpq_class(qx / qy));
  }
}

TEST(RankKernel, Identity) {
  const auto rk = rank_kernel(mat({{1, 0}, {0, 1}}));
  EXPECT_EQ(rk.rank, 2u);
  EXPECT_TRUE(rk.kernel.empty());
}

TEST(RankKernel, ProportionalRows) {
  const auto rk = rank_kernel(mat({{1, 2}, {2, 4}}));
  EXPECT_EQ(rk.rank, 1u);
  ASSERT_EQ(rk.kernel.size(), 1u);
  EXPECT_EQ(rk.kernel[0](0), Rational(-2));
  EXPECT_EQ(rk.kernel[0](1), Rational(1));
}

TEST(RankKernel, ZeroMatrix) {
  const auto rk = rank_kernel(zero_matrix(3, 3));
  EXPECT_EQ(rk.rank, 0u);
  ASSERT_EQ(rk.kernel.size(), 3u);
  for (Eigen::Index i = 0; i < 3; ++i) EXPECT_EQ(rk.kernel[static_cast<std::size_t>(i)], unit_vector(3, i));
}

TEST(RankKernel, RandomMatricesAreConsistent) {
  auto g = prop::rng(2);
  std::uniform_int_distribution<int> dim(1, 7);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index r = dim(g), c = dim(g);
    QMatrix a = prop::random_matrix(g, r, c);
    // Force some dependence.
    if (r > 2) a.row(r - 1) = a.row(0) * Rational(2) - a.row(1);
    const auto rk = rank_kernel(a);
    EXPECT_EQ(rk.rank + rk.kernel.size(), static_cast<std::size_t>(c));
    for (const auto& v : rk.kernel) EXPECT_TRUE(annihilates(a, v));
    SpanBasis sb(c);
    for (const auto& v : rk.kernel) EXPECT_TRUE(sb.insert(v));
  }
}

TEST(RankKernel, RationalEntries) {
  QMatrix a(2, 3);
  a << Rational(1, 2), Rational(1, 3), Rational(1), Rational(1, 4), Rational(1, 6), Rational(1, 2);
  const auto rk = rank_kernel(a);
  EXPECT_EQ(rk.rank, 1u);
  EXPECT_EQ(rk.kernel.size(), 2u);
  for (const auto& v : rk.kernel) EXPECT_TRUE(annihilates(a, v));
}

TEST(SparseRankKernel, MatchesDenseOnRandomSystems) {
  auto g = prop::rng(3);
  std::uniform_int_distribution<int> dim(1, 30);
  for (int t = 0; t < 60; ++t) {
    const int c = dim(g);
    const int r = dim(g) * 3;
    const int rank = std::uniform_int_distribution<int>(0, c)(g);
    const QMatrix basis = prop::random_matrix(g, std::max(rank, 1), c);
    QMatrix a = zero_matrix(r, c);
    std::vector<SparseRow> rows;
    for (int i = 0; i < r; ++i) {
      if (rank > 0) {
        const QMatrix mix = prop::random_matrix(g, 1, rank, 2);
        a.row(i) = mix * basis.topRows(rank);
      }
      SparseRow row;
      for (int j = 0; j < c; ++j) row.emplace_back(j, a(i, j));
      rows.push_back(row);
    }
    const auto dense = rank_kernel(a);
    const auto sparse = sparse_rank_kernel(rows, c);
    EXPECT_EQ(dense.rank, sparse.rank);
    EXPECT_EQ(dense.kernel.size(), sparse.kernel.size());
    for (const auto& v : sparse.kernel) EXPECT_TRUE(annihilates(a, v));
  }
}

TEST(SparseRankKernel, LargeRationalEntriesStillExact) {
  // Kernel entries beyond the reconstruction bound force the exact fallback.
  QMatrix a(1, 2);
  a << Rational(1), Rational(-(1LL << 40) - 7);
  const SparseRow row{{0, a(0, 0)}, {1, a(0, 1)}};
  const auto rk = sparse_rank_kernel({row}, 2);
  ASSERT_EQ(rk.kernel.size(), 1u);
  EXPECT_TRUE(annihilates(a, rk.kernel[0]));
}

TEST(Solve, ConsistentAndInconsistent) {
  const QMatrix a = mat({{1, 1}, {1, -1}});
  QVector b(2);
  b << Rational(3), Rational(1);
  const auto x = solve(a, b);
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)(0), Rational(2));
  EXPECT_EQ((*x)(1), Rational(1));
  const QMatrix s = mat({{1, 2}, {2, 4}});
  QVector c(2);
  c << Rational(1), Rational(1);
  EXPECT_FALSE(solve(s, c));
}

TEST(Determinant, KnownValuesAndDefiniteness) {
  EXPECT_EQ(determinant(mat({{2, 1}, {1, 3}})), Rational(5));
  EXPECT_EQ(determinant(mat({{0, 1}, {1, 0}})), Rational(-1));
  EXPECT_TRUE(is_negative_definite(mat({{-2, 1}, {1, -2}})));
  EXPECT_FALSE(is_negative_definite(mat({{-2, 3}, {3, -2}})));
  EXPECT_FALSE(is_negative_definite(mat({{0, 0}, {0, -1}})));
}

TEST(Epsilon, Examples) {
  EXPECT_EQ(epsilon(std::vector<int>{1, 2, 3, 4}), 1);
  EXPECT_EQ(epsilon(std::vector<int>{1, 2, 4, 3}), -1);
  EXPECT_EQ(epsilon(std::vector<int>{1, 1, 3, 4}), 0);
}

TEST(Epsilon, SwapNegates) {
  auto g = prop::rng(4);
  for (int t = 0; t < 500; ++t) {
    const int len = std::uniform_int_distribution<int>(2, 7)(g);
    std::vector<int> v(static_cast<std::size_t>(len));
    for (auto& x : v) x = std::uniform_int_distribution<int>(1, 9)(g);
    std::uniform_int_distribution<std::size_t> pos(0, v.size() - 1);
    const std::size_t i = pos(g);
    std::size_t j = pos(g);
    if (i == j) j = (j + 1) % v.size();
    auto w = v;
    std::swap(w[i], w[j]);
    EXPECT_EQ(epsilon(w), -epsilon(v));
  }
}

TEST(WedgeExpand, Examples) {
  const auto a = wedge_expand(std::vector<int>{3, 1});
  ASSERT_TRUE(a.canonical);
  EXPECT_EQ(*a.canonical, (MultiIndex{1, 3}));
  EXPECT_EQ(a.sign, -1);
  const auto b = wedge_expand(std::vector<int>{1, 3});
  EXPECT_EQ(*b.canonical, (MultiIndex{1, 3}));
  EXPECT_EQ(b.sign, 1);
  const auto c = wedge_expand(std::vector<int>{2, 2});
  EXPECT_FALSE(c.canonical);
  EXPECT_EQ(c.sign, 0);
}

TEST(WedgeExpand, PermutationProperty) {
  auto g = prop::rng(5);
  for (int t = 0; t < 500; ++t) {
    std::vector<int> tup(static_cast<std::size_t>(std::uniform_int_distribution<int>(1, 6)(g)));
    for (auto& x : tup) x = std::uniform_int_distribution<int>(1, 8)(g);
    std::vector<int> perm(tup.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), g);
    std::vector<int> permuted;
    for (int p : perm) permuted.push_back(tup[static_cast<std::size_t>(p)]);
    const auto base = wedge_expand(tup);
    const auto moved = wedge_expand(permuted);
    EXPECT_EQ(moved.canonical, base.canonical);
    EXPECT_EQ(moved.sign, epsilon(perm) * base.sign);
  }
}

TEST(MultiIndexBasis, SizesAndBijection) {
  const MultiIndexBasis w(6, 3, BasisMode::Wedge);
  EXPECT_EQ(w.size(), binomial(6, 3));
  const MultiIndexBasis t(4, 3, BasisMode::Tensor);
  EXPECT_EQ(t.size(), 64u);
  for (const auto* b : {&w, &t})
    for (std::size_t i = 0; i < b->size(); ++i) EXPECT_EQ(b->index_of((*b)[i]), i);
  EXPECT_FALSE(w.index_of(std::vector<int>{2, 1, 0}));
  EXPECT_EQ(MultiIndexBasis(3, 0, BasisMode::Wedge).size(), 1u);
}
