#pragma once

#include <array>
#include <cstddef>
#include <ostream>

#include <Eigen/Core>

#include "filicoh/rational.hpp"

namespace filicoh {

/// Element of T[t]/(t^(M+1)).
template <class T, std::size_t M>
class TruncatedSeries {
 public:
  static constexpr std::size_t max_order = M;

  TruncatedSeries() { c_.fill(T(0)); }
  TruncatedSeries(const T& c0) {  // NOLINT(google-explicit-constructor)
    c_.fill(T(0));
    c_[0] = c0;
  }
  TruncatedSeries(int c0) : TruncatedSeries(T(c0)) {}  // NOLINT

  static TruncatedSeries monomial(std::size_t k, const T& c) {
    TruncatedSeries s;
    if (k <= M) s.c_[k] = c;
    return s;
  }

  const T& operator[](std::size_t k) const { return c_[k]; }
  T& operator[](std::size_t k) { return c_[k]; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (!filicoh::is_zero(x)) return false;
    return true;
  }

  TruncatedSeries operator-() const {
    TruncatedSeries r;
    for (std::size_t k = 0; k <= M; ++k) r.c_[k] = -c_[k];
    return r;
  }
  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    for (std::size_t k = 0; k <= M; ++k) c_[k] += o.c_[k];
    return *this;
  }
  TruncatedSeries& operator-=(const TruncatedSeries& o) {
    for (std::size_t k = 0; k <= M; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  TruncatedSeries& operator*=(const TruncatedSeries& o) { return *this = *this * o; }

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries r;
    for (std::size_t i = 0; i <= M; ++i) {
      if (filicoh::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; i + j <= M; ++j)
        if (!filicoh::is_zero(b.c_[j])) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) { return a.c_ == b.c_; }

  friend std::ostream& operator<<(std::ostream& os, const TruncatedSeries& s) {
    os << s.c_[0];
    for (std::size_t k = 1; k <= M; ++k) os << " + (" << s.c_[k] << ")t^" << k;
    return os;
  }

 private:
  std::array<T, M + 1> c_;
};

template <class T, std::size_t M>
bool is_zero(const TruncatedSeries<T, M>& s) {
  return s.is_zero();
}

/// Scalars of second-order deformations.
using Series2 = TruncatedSeries<Rational, 2>;

}  // namespace filicoh

namespace Eigen {

template <class T, std::size_t M>
struct NumTraits<filicoh::TruncatedSeries<T, M>> : GenericNumTraits<filicoh::TruncatedSeries<T, M>> {
  using Real = filicoh::TruncatedSeries<T, M>;
  using NonInteger = Real;
  using Nested = Real;
  using Literal = Real;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3 * (M + 1),
    MulCost = 3 * (M + 1) * (M + 1)
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
