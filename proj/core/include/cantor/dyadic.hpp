#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "cantor/errors.hpp"

namespace cantor {

/// Arbitrary-precision dyadic rational, value = mantissa * 2^exponent.
/// Canonical form keeps the mantissa odd (or zero with exponent zero), so
/// equality is structural.
class DyadicRational {
 public:
  DyadicRational() : man_(0), exp_(0) {}
  DyadicRational(long v) : man_(v), exp_(0) { canonicalize(); }  // NOLINT(google-explicit-constructor)
  DyadicRational(mpz_class mantissa, std::int64_t exponent)
      : man_(std::move(mantissa)), exp_(exponent) {
    canonicalize();
  }

  /// value = numerator / 2^shift.
  static DyadicRational from_scaled(mpz_class numerator, std::int64_t shift) {
    return DyadicRational(std::move(numerator), -shift);
  }

  const mpz_class& mantissa() const { return man_; }
  std::int64_t exponent() const { return exp_; }
  int sign() const { return sgn(man_); }
  bool is_zero() const { return sgn(man_) == 0; }

  /// Number of significant bits of the mantissa (0 for zero).
  std::size_t mantissa_bits() const {
    return is_zero() ? 0 : mpz_sizeinbase(man_.get_mpz_t(), 2);
  }

  friend DyadicRational operator+(const DyadicRational& a, const DyadicRational& b);
  friend DyadicRational operator-(const DyadicRational& a, const DyadicRational& b);
  friend DyadicRational operator*(const DyadicRational& a, const DyadicRational& b);
  friend DyadicRational operator-(const DyadicRational& a);

  DyadicRational mul_pow2(std::int64_t k) const;  // exact scaling by 2^k

  friend bool operator==(const DyadicRational& a, const DyadicRational& b) {
    return a.exp_ == b.exp_ && a.man_ == b.man_;
  }
  friend bool operator<(const DyadicRational& a, const DyadicRational& b) {
    return compare(a, b) < 0;
  }
  friend bool operator<=(const DyadicRational& a, const DyadicRational& b) {
    return compare(a, b) <= 0;
  }
  friend bool operator>(const DyadicRational& a, const DyadicRational& b) {
    return compare(a, b) > 0;
  }
  friend bool operator>=(const DyadicRational& a, const DyadicRational& b) {
    return compare(a, b) >= 0;
  }
  static int compare(const DyadicRational& a, const DyadicRational& b);

  /// Exact comparison against a rational num/den (den > 0).
  int compare_fraction(const mpz_class& num, const mpz_class& den) const;
  int compare_fraction(long num, long den) const {
    return compare_fraction(mpz_class(num), mpz_class(den));
  }

  /// Directed rounding to at most p significant mantissa bits.
  DyadicRational round_down(unsigned p) const;  // towards -infinity
  DyadicRational round_up(unsigned p) const;    // towards +infinity

  mpq_class to_mpq() const;
  double to_double() const { return mpq_get_d(to_mpq().get_mpq_t()); }

  /// Exact decimal representation (dyadics terminate in base 10).
  std::string decimal_string() const;

 private:
  void canonicalize();
  DyadicRational round_impl(unsigned p, bool up) const;

  mpz_class man_;
  std::int64_t exp_;
};

/// Closed interval with dyadic endpoints.  All arithmetic rounds the lower
/// endpoint down and the upper endpoint up at the working precision, so true
/// values are always contained.
class DyadicInterval {
 public:
  DyadicInterval() = default;
  DyadicInterval(DyadicRational lo, DyadicRational hi);
  static DyadicInterval point(DyadicRational v) { return DyadicInterval(v, v); }

  const DyadicRational& lo() const { return lo_; }
  const DyadicRational& hi() const { return hi_; }
  DyadicRational width() const { return hi_ - lo_; }

  bool contains(const DyadicRational& v) const { return lo_ <= v && v <= hi_; }
  bool contains(const mpq_class& v) const;
  bool contains(const DyadicInterval& inner) const {
    return lo_ <= inner.lo_ && inner.hi_ <= hi_;
  }

  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;

  /// Outward-rounded arithmetic at precision p (p = 0 keeps results exact
  /// where the operation itself is exact).
  static DyadicInterval add(const DyadicInterval& a, const DyadicInterval& b, unsigned p = 0);
  static DyadicInterval sub(const DyadicInterval& a, const DyadicInterval& b, unsigned p = 0);
  static DyadicInterval mul(const DyadicInterval& a, const DyadicInterval& b, unsigned p = 0);
  /// Requires 0 outside b.  Always rounds (quotients are rarely dyadic).
  static DyadicInterval div(const DyadicInterval& a, const DyadicInterval& b, unsigned p);
  /// x^e by squaring with outward rounding; requires lo(x) >= 0.
  static DyadicInterval pow(const DyadicInterval& x, std::uint64_t e, unsigned p);

  DyadicInterval mul_pow2(std::int64_t k) const {
    return DyadicInterval(lo_.mul_pow2(k), hi_.mul_pow2(k));
  }
  DyadicInterval round_out(unsigned p) const {
    return DyadicInterval(lo_.round_down(p), hi_.round_up(p));
  }

 private:
  DyadicRational lo_, hi_;
};

DyadicInterval operator+(const DyadicInterval& a, const DyadicInterval& b);
DyadicInterval operator-(const DyadicInterval& a, const DyadicInterval& b);
DyadicInterval operator*(const DyadicInterval& a, const DyadicInterval& b);

/// Enclosure of sqrt over the interval, by directed integer square roots with
/// roughly p significant bits.  Requires lo(x) >= 0.
DyadicInterval iv_sqrt(const DyadicInterval& x, unsigned p);

/// Enclosure of a rational with outward rounding at p bits (den > 0).
DyadicInterval enclose_fraction(const mpz_class& num, const mpz_class& den, unsigned p);

}  // namespace cantor
