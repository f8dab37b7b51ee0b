#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace ctxkit {

/// Exact rational scalar for the LP rational mode. Numerator/denominator are
/// kept in int64 and every product goes through a checked 128-bit
/// intermediate; overflow throws instead of silently wrapping. Paper-sized
/// tables (eighths and halves) stay far below the limit.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(checked(__int128(a.num_) * b.den_ + __int128(b.num_) * a.den_),
                    checked(__int128(a.den_) * b.den_), already_checked{});
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(checked(__int128(a.num_) * b.den_ - __int128(b.num_) * a.den_),
                    checked(__int128(a.den_) * b.den_), already_checked{});
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(checked(__int128(a.num_) * b.num_),
                    checked(__int128(a.den_) * b.den_), already_checked{});
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return Rational(checked(__int128(a.num_) * b.den_),
                    checked(__int128(a.den_) * b.num_), already_checked{});
  }
  Rational operator-() const { return Rational(-num_, den_, already_checked{}); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return __int128(a.num_) * b.den_ < __int128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  double to_double() const { return double(num_) / double(den_); }

  /// Nearest rational to `x` with denominator capped at `max_den`
  /// (continued-fraction convergents). Decimal table entries such as 0.375
  /// recover 3/8 exactly.
  static Rational from_double(double x, std::int64_t max_den = 1 << 20);

  std::string str() const {
    return den_ == 1 ? std::to_string(num_)
                     : std::to_string(num_) + "/" + std::to_string(den_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  struct already_checked {};
  Rational(std::int64_t n, std::int64_t d, already_checked) : num_(n), den_(d) {
    normalize();
  }
  static std::int64_t checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
      throw std::overflow_error("Rational: 64-bit overflow (use double mode)");
    return std::int64_t(v);
  }
  void normalize() {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
  }

  std::int64_t num_;
  std::int64_t den_;
};

inline Rational Rational::from_double(double x, std::int64_t max_den) {
  bool neg = x < 0;
  if (neg) x = -x;
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = x;
  for (int it = 0; it < 64; ++it) {
    std::int64_t a = std::int64_t(frac);
    std::int64_t p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = frac - double(a);
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) throw std::domain_error("Rational::from_double: no convergent");
  return neg ? Rational(-p1, q1) : Rational(p1, q1);
}

inline Rational abs(const Rational& r) {
  return r < Rational(0) ? -r : r;
}

}  // namespace ctxkit

namespace Eigen {
template <>
struct NumTraits<ctxkit::Rational> : GenericNumTraits<ctxkit::Rational> {
  typedef ctxkit::Rational Real;
  typedef ctxkit::Rational NonInteger;
  typedef ctxkit::Rational Nested;
  static inline Real epsilon() { return ctxkit::Rational(0); }
  static inline Real dummy_precision() { return ctxkit::Rational(0); }
  static inline int digits10() { return 18; }
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 6,
    MulCost = 6
  };
};
}  // namespace Eigen
