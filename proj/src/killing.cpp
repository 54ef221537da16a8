#include "filicoh/killing.hpp"

namespace filicoh {
namespace {

Rational trace_of_product(const QMatrix& x, const QMatrix& y) {
  Rational t(0);
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index k = 0; k < x.cols(); ++k)
      if (!x(i, k).is_zero() && !y(k, i).is_zero()) t += x(i, k) * y(k, i);
  return t;
}

QMatrix gram(const FundamentalOps& ops) {
  const auto m = static_cast<Eigen::Index>(ops.size());
  QMatrix g(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i; j < m; ++j) {
      g(i, j) = trace_of_product(ops.ad_basis(static_cast<std::size_t>(i)), ops.ad_basis(static_cast<std::size_t>(j)));
      g(j, i) = g(i, j);
    }
  return g;
}

}  // namespace

Rational kasymov_form(const Algebra& a, const FundamentalVector& x, const FundamentalVector& y) {
  const FundamentalOps ops(a);
  return trace_of_product(ops.ad(x), ops.ad(y));
}

KasymovReport kasymov_nondegenerate(const Algebra& a) {
  const FundamentalOps ops(a);
  const QMatrix g = gram(ops);
  const int d = a.dim();
  const MultiIndexBasis rest(d, a.n() - 2, BasisMode::Wedge);
  KasymovReport rep;
  rep.fillers = rest.size() * ops.size();
  // Row (J, K), column z: k((e_z, e_J), e_K).
  QMatrix m = zero_matrix(static_cast<Eigen::Index>(rep.fillers), d);
  Eigen::Index row = 0;
  for (const auto& j : rest.elements()) {
    for (std::size_t k = 0; k < ops.size(); ++k, ++row) {
      for (int z = 0; z < d; ++z) {
        MultiIndex idx{z};
        idx.insert(idx.end(), j.begin(), j.end());
        const WedgeTerm w = wedge_expand(idx);
        if (w.sign == 0) continue;
        const auto x = static_cast<Eigen::Index>(*ops.basis().index_of(*w.canonical));
        m(row, z) = w.sign > 0 ? g(x, static_cast<Eigen::Index>(k)) : -g(x, static_cast<Eigen::Index>(k));
      }
    }
  }
  const RankKernel rk = rank_kernel(m);
  rep.nondegenerate = rk.kernel.empty();
  if (!rk.kernel.empty()) rep.witness = rk.kernel.front();
  return rep;
}

GramReport wedge_gram_matrix(const Algebra& a) {
  const FundamentalOps ops(a);
  GramReport rep;
  rep.matrix = gram(ops);
  const RankKernel rk = rank_kernel(rep.matrix);
  rep.rank = rk.rank;
  rep.nullity = rk.kernel.size();
  for (const auto& v : rk.kernel) rep.null_basis.push_back({BasisMode::Wedge, v});
  rep.is_diagonal = true;
  for (Eigen::Index i = 0; i < rep.matrix.rows(); ++i)
    for (Eigen::Index j = 0; j < rep.matrix.cols(); ++j)
      if (i != j && !rep.matrix(i, j).is_zero()) rep.is_diagonal = false;
  return rep;
}

}  // namespace filicoh
