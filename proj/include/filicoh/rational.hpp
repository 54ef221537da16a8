#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>

#include <Eigen/Core>
#include <gmpxx.h>

namespace filicoh {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in 62 bits are kept inline and
/// handled with 128-bit intermediates; anything larger is promoted to a shared,
/// immutable GMP rational and demoted again as soon as it fits.
class Rational {
 public:
  Rational() noexcept = default;
  Rational(int v) noexcept : num_(v) {}                  // NOLINT(google-explicit-constructor)
  Rational(long v) : Rational(static_cast<long long>(v)) {}  // NOLINT
  Rational(long long v);                                 // NOLINT
  Rational(long long num, long long den);
  explicit Rational(const mpq_class& q);
  Rational(const mpz_class& num, const mpz_class& den);

  /// Parses "a", "-a", or "a/b".
  static Rational parse(const std::string& text);

  bool is_zero() const noexcept { return !big_ && num_ == 0; }
  bool is_integer() const;
  int sign() const;

  mpz_class numerator() const;
  mpz_class denominator() const;
  mpq_class to_mpq() const;

  /// True when the value is held inline (both parts fit in an int64).
  bool is_small() const noexcept { return !big_; }
  std::int64_t small_num() const noexcept { return num_; }
  std::int64_t small_den() const noexcept { return den_; }

  std::string to_string() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  void assign_wide(__int128 num, __int128 den);
  void assign_mpq(mpq_class q);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

inline bool is_zero(const Rational& q) { return q.is_zero(); }
Rational abs(const Rational& q);

using QMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using QVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

QMatrix zero_matrix(Eigen::Index rows, Eigen::Index cols);
QVector zero_vector(Eigen::Index size);
QVector unit_vector(Eigen::Index size, Eigen::Index at);
bool is_zero(const QMatrix& m);

}  // namespace filicoh

namespace Eigen {

template <>
struct NumTraits<filicoh::Rational> : GenericNumTraits<filicoh::Rational> {
  using Real = filicoh::Rational;
  using NonInteger = filicoh::Rational;
  using Nested = filicoh::Rational;
  using Literal = filicoh::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 8,
    MulCost = 8
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
