#include "filicoh/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace filicoh {
namespace {

/// Multiplies each row by the lcm of its denominators; the null space is unchanged.
QMatrix integral_rows(const QMatrix& a) {
  QMatrix m = a;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    mpz_class l = 1;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_integer()) l = lcm(l, m(i, j).denominator());
    if (l != 1) {
      const Rational s(l, mpz_class(1));
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) *= s;
    }
  }
  return m;
}

struct Echelon {
  QMatrix m;
  std::vector<Eigen::Index> pivots;  // pivot column of row k
};

Echelon bareiss(QMatrix m) {
  Echelon out;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  Rational prev(1);
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) m.row(p).swap(m.row(r));
    const Rational piv = m(r, c);
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      const Rational lead = m(i, c);
      for (Eigen::Index j = c + 1; j < cols; ++j) {
        Rational v = piv * m(i, j);
        if (!lead.is_zero()) v -= lead * m(r, j);
        m(i, j) = v / prev;
      }
      m(i, c) = Rational(0);
    }
    prev = piv;
    out.pivots.push_back(c);
    ++r;
  }
  out.m = std::move(m);
  return out;
}

std::vector<QVector> kernel_from_echelon(const Echelon& e, Eigen::Index cols) {
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (auto c : e.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<QVector> basis;
  for (Eigen::Index f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    QVector x = zero_vector(cols);
    x(f) = Rational(1);
    for (auto k = static_cast<Eigen::Index>(e.pivots.size()) - 1; k >= 0; --k) {
      const Eigen::Index pc = e.pivots[static_cast<std::size_t>(k)];
      Rational s(0);
      for (Eigen::Index j = pc + 1; j < cols; ++j)
        if (!e.m(k, j).is_zero() && !x(j).is_zero()) s += e.m(k, j) * x(j);
      x(pc) = -s / e.m(k, pc);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

// Arithmetic modulo the Mersenne prime 2^61 - 1.
constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mod_reduce(unsigned __int128 x) {
  std::uint64_t lo = static_cast<std::uint64_t>(x & kPrime);
  std::uint64_t hi = static_cast<std::uint64_t>(x >> 61);
  std::uint64_t s = lo + hi;
  s = (s & kPrime) + (s >> 61);
  return s >= kPrime ? s - kPrime : s;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  return mod_reduce(static_cast<unsigned __int128>(a) * b);
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t s = a + b;
  return s >= kPrime ? s - kPrime : s;
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul_mod(r, b);
    b = mul_mod(b, b);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a) { return pow_mod(a, kPrime - 2); }

std::uint64_t int_mod(std::int64_t v) {
  const std::int64_t p = static_cast<std::int64_t>(kPrime);
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return static_cast<std::uint64_t>(r);
}

std::optional<std::uint64_t> to_mod(const Rational& q) {
  std::uint64_t num = 0;
  std::uint64_t den = 0;
  if (q.is_small()) {
    num = int_mod(q.small_num());
    den = int_mod(q.small_den());
  } else {
    const mpz_class p(std::to_string(kPrime));
    mpz_class n = q.numerator() % p;
    if (n < 0) n += p;
    const mpz_class d = q.denominator() % p;
    num = std::stoull(n.get_str());
    den = std::stoull(d.get_str());
  }
  if (den == 0) return std::nullopt;
  return mul_mod(num, inv_mod(den));
}

/// Rational reconstruction with symmetric bounds sqrt(p/2).
std::optional<Rational> reconstruct(std::uint64_t a) {
  if (a == 0) return Rational(0);
  constexpr std::int64_t kBound = std::int64_t{1} << 30;
  __int128 r0 = static_cast<__int128>(kPrime), r1 = a;
  __int128 t0 = 0, t1 = 1;
  while (r1 >= kBound) {
    const __int128 q = r0 / r1;
    const __int128 r2 = r0 - q * r1;
    const __int128 t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || t1 >= kBound || t1 <= -kBound) return std::nullopt;
  return Rational(static_cast<long long>(r1), static_cast<long long>(t1));
}

struct RowHash {
  std::size_t operator()(const SparseRow& r) const {
    std::size_t h = r.size();
    for (const auto& [c, v] : r) {
      h = h * 1000003u ^ static_cast<std::size_t>(c);
      h = h * 1000003u ^ std::hash<std::string>{}(v.is_small() ? std::string() : v.to_string());
      if (v.is_small()) {
        h = h * 1000003u ^ static_cast<std::size_t>(v.small_num());
        h = h * 1000003u ^ static_cast<std::size_t>(v.small_den());
      }
    }
    return h;
  }
};

struct RowEq {
  bool operator()(const SparseRow& a, const SparseRow& b) const { return a == b; }
};

/// Modular kernel attempt; returns nullopt if reconstruction or verification fails.
std::optional<RankKernel> modular_kernel(const std::vector<SparseRow>& rows, int cols, std::uint64_t seed,
                                         bool dense_sketch) {
  const auto ncols = static_cast<std::size_t>(cols);
  std::vector<std::vector<std::pair<int, std::uint64_t>>> mod_rows;
  mod_rows.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<std::pair<int, std::uint64_t>> r;
    r.reserve(row.size());
    for (const auto& [c, v] : row) {
      const auto m = to_mod(v);
      if (!m) return std::nullopt;
      if (*m) r.emplace_back(c, *m);
    }
    mod_rows.push_back(std::move(r));
  }

  std::vector<std::vector<std::uint64_t>> dense;
  const std::size_t target = ncols + 8;
  if (mod_rows.size() <= target) {
    for (const auto& r : mod_rows) {
      std::vector<std::uint64_t> d(ncols, 0);
      for (const auto& [c, v] : r) d[static_cast<std::size_t>(c)] = v;
      dense.push_back(std::move(d));
    }
  } else {
    // Each row is spread over `fan` random sketch rows; fan < target only for
    // very tall systems, and a rank loss there is caught by the exact check.
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> coef(1, kPrime - 1);
    std::uniform_int_distribution<std::size_t> slot(0, target - 1);
    const std::size_t fan = (dense_sketch || mod_rows.size() <= 8 * target) ? target : std::min<std::size_t>(target, 32);
    dense.assign(target, std::vector<std::uint64_t>(ncols, 0));
    for (const auto& r : mod_rows) {
      for (std::size_t k = 0; k < fan; ++k) {
        const std::uint64_t w = coef(rng);
        auto& d = dense[fan == target ? k : slot(rng)];
        for (const auto& [c, v] : r) d[static_cast<std::size_t>(c)] = add_mod(d[static_cast<std::size_t>(c)], mul_mod(w, v));
      }
    }
  }

  // Reduced row echelon form mod p.
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < ncols && rank < dense.size(); ++c) {
    std::size_t p = rank;
    while (p < dense.size() && dense[p][c] == 0) ++p;
    if (p == dense.size()) continue;
    std::swap(dense[p], dense[rank]);
    auto& prow = dense[rank];
    const std::uint64_t inv = inv_mod(prow[c]);
    for (std::size_t j = c; j < ncols; ++j) prow[j] = mul_mod(prow[j], inv);
    for (std::size_t i = 0; i < dense.size(); ++i) {
      if (i == rank || dense[i][c] == 0) continue;
      const std::uint64_t f = dense[i][c];
      auto& row = dense[i];
      for (std::size_t j = c; j < ncols; ++j)
        if (prow[j]) row[j] = sub_mod(row[j], mul_mod(f, prow[j]));
    }
    pivot_cols.push_back(c);
    ++rank;
  }

  std::vector<bool> is_pivot(ncols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  RankKernel out;
  out.rank = static_cast<std::size_t>(cols) - (ncols - rank);
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    QVector x = zero_vector(cols);
    x(static_cast<Eigen::Index>(f)) = Rational(1);
    for (std::size_t k = 0; k < rank; ++k) {
      const std::uint64_t v = dense[k][f];
      if (v == 0) continue;
      const auto q = reconstruct(sub_mod(0, v));
      if (!q) return std::nullopt;
      x(static_cast<Eigen::Index>(pivot_cols[k])) = *q;
    }
    out.kernel.push_back(std::move(x));
  }

  for (const auto& row : rows)
    for (const auto& x : out.kernel)
      if (!dot(row, x).is_zero()) return std::nullopt;
  return out;
}

}  // namespace

RankKernel rank_kernel(const QMatrix& a) {
  RankKernel out;
  if (a.cols() == 0) return out;
  if (a.rows() == 0) {
    for (Eigen::Index f = 0; f < a.cols(); ++f) out.kernel.push_back(unit_vector(a.cols(), f));
    return out;
  }
  const Echelon e = bareiss(integral_rows(a));
  out.rank = e.pivots.size();
  out.kernel = kernel_from_echelon(e, a.cols());
  return out;
}

Rational determinant(const QMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: matrix not square");
  const Eigen::Index n = a.rows();
  if (n == 0) return Rational(1);
  QMatrix m = a;
  Rational prev(1);
  int sign = 1;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = k;
    while (p < n && m(p, k).is_zero()) ++p;
    if (p == n) return Rational(0);
    if (p != k) {
      m.row(p).swap(m.row(k));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
      m(i, k) = Rational(0);
    }
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

std::optional<QVector> solve(const QMatrix& a, const QVector& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve: dimension mismatch");
  QMatrix aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  const RankKernel rk = rank_kernel(aug);
  // A solution exists iff some kernel vector of [A | b] has a nonzero last entry.
  for (const auto& v : rk.kernel) {
    const Rational last = v(a.cols());
    if (!last.is_zero()) {
      QVector x(a.cols());
      for (Eigen::Index j = 0; j < a.cols(); ++j) x(j) = -v(j) / last;
      return x;
    }
  }
  return std::nullopt;
}

bool is_negative_definite(const QMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("is_negative_definite: matrix not square");
  for (Eigen::Index k = 1; k <= a.rows(); ++k) {
    const int s = determinant(a.topLeftCorner(k, k)).sign();
    if (s != ((k % 2 == 0) ? 1 : -1)) return false;
  }
  return true;
}

QVector SpanBasis::reduce(QVector v) const {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Eigen::Index pc = pivots_[k];
    if (v(pc).is_zero()) continue;
    const Rational f = v(pc);
    for (Eigen::Index j = 0; j < ambient_; ++j)
      if (!rows_[k](j).is_zero()) v(j) -= f * rows_[k](j);
  }
  return v;
}

bool SpanBasis::insert(const QVector& v) {
  if (v.size() != ambient_) throw std::invalid_argument("SpanBasis: dimension mismatch");
  QVector r = reduce(v);
  Eigen::Index pc = 0;
  while (pc < ambient_ && r(pc).is_zero()) ++pc;
  if (pc == ambient_) return false;
  const Rational inv = Rational(1) / r(pc);
  for (Eigen::Index j = 0; j < ambient_; ++j) r(j) *= inv;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    if (rows_[k](pc).is_zero()) continue;
    const Rational f = rows_[k](pc);
    for (Eigen::Index j = 0; j < ambient_; ++j)
      if (!r(j).is_zero()) rows_[k](j) -= f * r(j);
  }
  rows_.push_back(std::move(r));
  pivots_.push_back(pc);
  return true;
}

bool SpanBasis::contains(const QVector& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("SpanBasis: dimension mismatch");
  const QVector r = reduce(v);
  for (Eigen::Index j = 0; j < ambient_; ++j)
    if (!r(j).is_zero()) return false;
  return true;
}

void normalize(SparseRow& row) {
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < row.size();) {
    const int c = row[i].first;
    Rational s = row[i].second;
    std::size_t j = i + 1;
    while (j < row.size() && row[j].first == c) s += row[j++].second;
    if (!s.is_zero()) row[out++] = {c, std::move(s)};
    i = j;
  }
  row.resize(out);
}

Rational dot(const SparseRow& row, const QVector& v) {
  Rational s(0);
  for (const auto& [c, x] : row) {
    const Rational& y = v(c);
    if (!y.is_zero()) s += x * y;
  }
  return s;
}

RankKernel sparse_rank_kernel(const std::vector<SparseRow>& rows, int cols) {
  if (cols < 0) throw std::invalid_argument("sparse_rank_kernel: negative column count");
  // Scale every row to a leading 1 and drop zero and duplicate rows.
  std::unordered_map<SparseRow, char, RowHash, RowEq> seen;
  std::vector<SparseRow> unique;
  for (SparseRow r : rows) {
    normalize(r);
    if (r.empty()) continue;
    for (const auto& [c, v] : r)
      if (c < 0 || c >= cols) throw std::invalid_argument("sparse_rank_kernel: column out of range");
    const Rational lead = r.front().second;
    if (lead != Rational(1))
      for (auto& e : r) e.second /= lead;
    if (seen.emplace(r, 0).second) unique.push_back(std::move(r));
  }
  if (unique.empty()) {
    RankKernel out;
    for (int f = 0; f < cols; ++f) out.kernel.push_back(unit_vector(cols, f));
    return out;
  }
  for (std::uint64_t attempt = 0; attempt < 3; ++attempt) {
    if (auto r = modular_kernel(unique, cols, 0x9e3779b97f4a7c15ULL + attempt, attempt > 0)) return *r;
  }
  QMatrix dense = zero_matrix(static_cast<Eigen::Index>(unique.size()), cols);
  for (std::size_t i = 0; i < unique.size(); ++i)
    for (const auto& [c, v] : unique[i]) dense(static_cast<Eigen::Index>(i), c) = v;
  return rank_kernel(dense);
}

}  // namespace filicoh
