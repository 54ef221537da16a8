#include "filicoh/rational.hpp"

#include <numeric>
#include <ostream>
#include <stdexcept>

namespace filicoh {
namespace {

constexpr std::int64_t kSmallLimit = std::int64_t{1} << 62;

bool fits_small(__int128 v) { return v > -static_cast<__int128>(kSmallLimit) && v < kSmallLimit; }
bool fits_small(std::int64_t v) { return v > -kSmallLimit && v < kSmallLimit; }

mpz_class to_mpz(__int128 v) {
  const bool negative = v < 0;
  unsigned __int128 mag = negative ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  const auto hi = static_cast<unsigned long>(static_cast<std::uint64_t>(mag >> 64));
  const auto lo = static_cast<unsigned long>(static_cast<std::uint64_t>(mag));
  mpz_class out = hi;
  out <<= 64;
  out += lo;
  if (negative) out = -out;
  return out;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

}  // namespace

Rational::Rational(long long v) {
  if (fits_small(static_cast<std::int64_t>(v))) {
    num_ = v;
  } else {
    assign_mpq(mpq_class(mpz_class(std::to_string(v))));
  }
}

Rational::Rational(long long num, long long den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  assign_wide(num, den);
}

Rational::Rational(const mpq_class& q) { assign_mpq(q); }

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  assign_mpq(std::move(q));
}

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(mpz_class(text), mpz_class(1));
    return Rational(mpz_class(text.substr(0, slash)), mpz_class(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
}

void Rational::assign_wide(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) {
    num_ = 0;
    den_ = 1;
    big_.reset();
    return;
  }
  if (den != 1) {
    unsigned __int128 a = num < 0 ? -static_cast<unsigned __int128>(num) : static_cast<unsigned __int128>(num);
    unsigned __int128 b = static_cast<unsigned __int128>(den);
    while (b != 0) {
      const unsigned __int128 r = a % b;
      a = b;
      b = r;
    }
    if (a != 1) {
      num /= static_cast<__int128>(a);
      den /= static_cast<__int128>(a);
    }
  }
  if (fits_small(num) && fits_small(den)) {
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    big_.reset();
  } else {
    mpq_class q(to_mpz(num), to_mpz(den));
    big_ = std::make_shared<const mpq_class>(std::move(q));
  }
}

void Rational::assign_mpq(mpq_class q) {
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (n.fits_slong_p() && d.fits_slong_p() && fits_small(static_cast<std::int64_t>(n.get_si())) &&
      fits_small(static_cast<std::int64_t>(d.get_si()))) {
    num_ = n.get_si();
    den_ = d.get_si();
    big_.reset();
  } else {
    num_ = 0;
    den_ = 1;
    big_ = std::make_shared<const mpq_class>(std::move(q));
  }
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

mpz_class Rational::numerator() const {
  return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(num_));
}

mpz_class Rational::denominator() const {
  return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(den_));
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

std::string Rational::to_string() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
  Rational out;
  if (big_) {
    out.assign_mpq(-*big_);
  } else {
    out.num_ = -num_;
    out.den_ = den_;
  }
  return out;
}

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      const std::int64_t s = num_ + o.num_;  // |s| < 2^63
      if (fits_small(s)) {
        num_ = s;
      } else {
        assign_wide(s, 1);
      }
      return *this;
    }
    const std::int64_t g = std::gcd(den_, o.den_);
    if (g == 1) {
      assign_wide(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                  static_cast<__int128>(den_) * o.den_);
      return *this;
    }
    const __int128 t = static_cast<__int128>(num_) * (o.den_ / g) + static_cast<__int128>(o.num_) * (den_ / g);
    assign_wide(t, static_cast<__int128>(den_ / g) * o.den_);
    return *this;
  }
  assign_mpq(to_mpq() + o.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (num_ == 0 || o.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    if (den_ == 1 && o.den_ == 1) {
      const __int128 p = static_cast<__int128>(num_) * o.num_;
      if (fits_small(p)) {
        num_ = static_cast<std::int64_t>(p);
      } else {
        assign_wide(p, 1);
      }
      return *this;
    }
    const std::int64_t g1 = gcd64(num_, o.den_);
    const std::int64_t g2 = gcd64(o.num_, den_);
    const __int128 n = static_cast<__int128>(num_ / g1) * (o.num_ / g2);
    const __int128 d = static_cast<__int128>(den_ / g2) * (o.den_ / g1);
    if (fits_small(n) && fits_small(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
    } else {
      assign_wide(n, d);
    }
    return *this;
  }
  assign_mpq(to_mpq() * o.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  if (!o.big_) {
    Rational inv;
    inv.num_ = o.num_ < 0 ? -o.den_ : o.den_;
    inv.den_ = o.num_ < 0 ? -o.num_ : o.num_;
    return *this *= inv;
  }
  assign_mpq(to_mpq() / o.to_mpq());
  return *this;
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical form: a big value never equals a small one
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    const __int128 l = static_cast<__int128>(a.num_) * b.den_;
    const __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l <=> r;
  }
  const int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }

QMatrix zero_matrix(Eigen::Index rows, Eigen::Index cols) {
  return QMatrix::Constant(rows, cols, Rational(0));
}

QVector zero_vector(Eigen::Index size) { return QVector::Constant(size, Rational(0)); }

QVector unit_vector(Eigen::Index size, Eigen::Index at) {
  QVector v = zero_vector(size);
  v(at) = Rational(1);
  return v;
}

bool is_zero(const QMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) return false;
  return true;
}

}  // namespace filicoh
