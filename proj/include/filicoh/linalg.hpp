#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "filicoh/rational.hpp"

namespace filicoh {

struct RankKernel {
  std::size_t rank = 0;
  /// Basis of the null space; vector k has a 1 in the k-th free column and 0 in
  /// the other free columns.
  std::vector<QVector> kernel;
};

/// Exact rank and null space by fraction-free (Bareiss) elimination.
RankKernel rank_kernel(const QMatrix& a);

/// Determinant by fraction-free elimination with row pivoting.
Rational determinant(const QMatrix& a);

/// Some solution of A x = b, or nullopt when the system is inconsistent.
std::optional<QVector> solve(const QMatrix& a, const QVector& b);

/// Negative definiteness of a symmetric matrix via leading principal minors.
bool is_negative_definite(const QMatrix& a);

/// Incrementally maintained reduced row echelon basis of a span.
class SpanBasis {
 public:
  explicit SpanBasis(Eigen::Index ambient) : ambient_(ambient) {}

  /// Adds v to the span; returns true when the dimension grew.
  bool insert(const QVector& v);
  bool contains(const QVector& v) const;
  std::size_t dim() const { return rows_.size(); }
  Eigen::Index ambient() const { return ambient_; }

 private:
  QVector reduce(QVector v) const;

  Eigen::Index ambient_;
  std::vector<QVector> rows_;
  std::vector<Eigen::Index> pivots_;
};

using SparseRow = std::vector<std::pair<int, Rational>>;

/// Sorts by column, merges duplicates and drops zeros.
void normalize(SparseRow& row);

/// Rank and null space of a sparse system given row by row.
///
/// The kernel is found modulo a 61-bit prime after random row compression,
/// lifted by rational reconstruction, and then checked exactly against every
/// row. The count of lifted vectors bounds the true nullity from above, so a
/// passing check makes the answer exact; otherwise the computation falls back
/// to dense fraction-free elimination.
RankKernel sparse_rank_kernel(const std::vector<SparseRow>& rows, int cols);

/// Exact dot product of a sparse row with a dense vector.
Rational dot(const SparseRow& row, const QVector& v);

}  // namespace filicoh
