#pragma once

#include <cstdint>
#include <random>

#include "filicoh/algebra.hpp"
#include "filicoh/rational.hpp"

namespace filicoh::prop {

inline std::mt19937_64 rng(std::uint64_t salt) { return std::mt19937_64(0x5eed0000ULL + salt); }

inline Rational small_rational(std::mt19937_64& g, int range = 5, int max_den = 4) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> den(1, max_den);
  return Rational(num(g), den(g));
}

inline QMatrix random_matrix(std::mt19937_64& g, Eigen::Index rows, Eigen::Index cols, int range = 3) {
  std::uniform_int_distribution<int> v(-range, range);
  QMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Rational(v(g));
  return m;
}

inline QVector random_vector(std::mt19937_64& g, Eigen::Index size) {
  QVector v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = small_rational(g);
  return v;
}

/// Algebra in a new basis given by the columns of an invertible matrix.
inline Algebra change_basis(const Algebra& a, const QMatrix& p, const QMatrix& p_inv) {
  const int d = a.dim();
  Algebra out(a.n(), d);
  for (std::size_t k = 0; k < a.wedge().size(); ++k) {
    std::vector<QVector> args;
    for (int i : a.wedge()[k]) args.push_back(p.col(i));
    const QVector v = p_inv * a.bracket(args);
    for (int b = 0; b < d; ++b)
      if (!v(b).is_zero()) out.set_constant(a.wedge()[k], b, v(b));
  }
  return out;
}

/// Random algebra satisfying FI: a diagonal deformation of the simple algebra
/// (arbitrary weights, zeros allowed) in a random unipotent basis, sometimes
/// with an abelian summand.
inline Algebra random_fi_algebra(std::mt19937_64& g, int n) {
  std::uniform_int_distribution<int> weight(-2, 2);
  std::uniform_int_distribution<int> entry(-1, 1);
  const int d0 = n + 1;
  Algebra base(n, d0);
  for (int i = 0; i <= n; ++i) {
    MultiIndex idx;
    for (int j = 0; j <= n; ++j)
      if (j != i) idx.push_back(j);
    base.set_constant(idx, i, Rational(weight(g)));
  }
  if (std::uniform_int_distribution<int>(0, 1)(g) == 1) base = direct_sum({base, abelian_algebra(n, 1)});
  const int d = base.dim();
  QMatrix nil = zero_matrix(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) nil(i, j) = Rational(entry(g));
  const QMatrix id = QMatrix::Identity(d, d);
  QMatrix inv = id;
  QMatrix power = id;
  for (int k = 1; k < d; ++k) {
    power = power * (-nil);
    inv += power;
  }
  return change_basis(base, id + nil, inv);
}

}  // namespace filicoh::prop
