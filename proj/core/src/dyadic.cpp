#include "cantor/dyadic.hpp"

#include <algorithm>
#include <cstdlib>

namespace cantor {

void DyadicRational::canonicalize() {
  if (sgn(man_) == 0) {
    exp_ = 0;
    return;
  }
  const auto tz = mpz_scan1(man_.get_mpz_t(), 0);
  if (tz > 0) {
    man_ >>= tz;
    exp_ += static_cast<std::int64_t>(tz);
  }
}

DyadicRational operator+(const DyadicRational& a, const DyadicRational& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const std::int64_t e = std::min(a.exp_, b.exp_);
  mpz_class m = (a.man_ << static_cast<unsigned long>(a.exp_ - e)) +
                (b.man_ << static_cast<unsigned long>(b.exp_ - e));
  return DyadicRational(std::move(m), e);
}

DyadicRational operator-(const DyadicRational& a, const DyadicRational& b) {
  return a + (-b);
}

DyadicRational operator-(const DyadicRational& a) {
  DyadicRational r = a;
  return DyadicRational(mpz_class(-r.mantissa()), r.exponent());
}

DyadicRational operator*(const DyadicRational& a, const DyadicRational& b) {
  return DyadicRational(mpz_class(a.man_ * b.man_), a.exp_ + b.exp_);
}

DyadicRational DyadicRational::mul_pow2(std::int64_t k) const {
  if (is_zero()) return *this;
  return DyadicRational(man_, exp_ + k);
}

int DyadicRational::compare(const DyadicRational& a, const DyadicRational& b) {
  const int sa = a.sign(), sb = b.sign();
  if (sa != sb) return sa < sb ? -1 : 1;
  if (sa == 0) return 0;
  const std::int64_t e = std::min(a.exp_, b.exp_);
  mpz_class ma = a.man_ << static_cast<unsigned long>(a.exp_ - e);
  mpz_class mb = b.man_ << static_cast<unsigned long>(b.exp_ - e);
  return cmp(ma, mb);
}

int DyadicRational::compare_fraction(const mpz_class& num, const mpz_class& den) const {
  // man * 2^exp  vs  num / den  <=>  man * den * 2^exp  vs  num.
  mpz_class lhs = man_ * den;
  mpz_class rhs = num;
  if (exp_ >= 0) {
    lhs <<= static_cast<unsigned long>(exp_);
  } else {
    rhs <<= static_cast<unsigned long>(-exp_);
  }
  return cmp(lhs, rhs);
}

DyadicRational DyadicRational::round_impl(unsigned p, bool up) const {
  if (p == 0 || is_zero()) return *this;
  const std::size_t bits = mantissa_bits();
  if (bits <= p) return *this;
  const unsigned long drop = static_cast<unsigned long>(bits - p);
  mpz_class q;
  if (up) {
    mpz_cdiv_q_2exp(q.get_mpz_t(), man_.get_mpz_t(), drop);
  } else {
    mpz_fdiv_q_2exp(q.get_mpz_t(), man_.get_mpz_t(), drop);
  }
  return DyadicRational(std::move(q), exp_ + static_cast<std::int64_t>(drop));
}

DyadicRational DyadicRational::round_down(unsigned p) const { return round_impl(p, false); }
DyadicRational DyadicRational::round_up(unsigned p) const { return round_impl(p, true); }

mpq_class DyadicRational::to_mpq() const {
  mpq_class q;
  if (exp_ >= 0) {
    mpz_class n = man_ << static_cast<unsigned long>(exp_);
    q = mpq_class(n);
  } else {
    mpz_class d = mpz_class(1) << static_cast<unsigned long>(-exp_);
    q = mpq_class(man_, d);
    q.canonicalize();
  }
  return q;
}

std::string DyadicRational::decimal_string() const {
  if (is_zero()) return "0";
  mpz_class m = man_;
  const bool neg = sgn(m) < 0;
  if (neg) m = -m;
  std::string out = neg ? "-" : "";
  if (exp_ >= 0) {
    mpz_class n = m << static_cast<unsigned long>(exp_);
    out += n.get_str();
    return out;
  }
  // m / 2^k == (m * 5^k) / 10^k: shift the decimal point k places.
  const unsigned long k = static_cast<unsigned long>(-exp_);
  mpz_class five, scaled;
  mpz_ui_pow_ui(five.get_mpz_t(), 5, k);
  scaled = m * five;
  std::string digits = scaled.get_str();
  if (digits.size() <= k) digits.insert(0, k + 1 - digits.size(), '0');
  std::string integral = digits.substr(0, digits.size() - k);
  std::string fraction = digits.substr(digits.size() - k);
  while (!fraction.empty() && fraction.back() == '0') fraction.pop_back();
  out += integral;
  if (!fraction.empty()) {
    out += '.';
    out += fraction;
  }
  return out;
}

DyadicInterval::DyadicInterval(DyadicRational lo, DyadicRational hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) throw std::invalid_argument("interval endpoints out of order");
}

bool DyadicInterval::contains(const mpq_class& v) const {
  return lo_.compare_fraction(v.get_num(), v.get_den()) <= 0 &&
         hi_.compare_fraction(v.get_num(), v.get_den()) >= 0;
}

DyadicInterval DyadicInterval::add(const DyadicInterval& a, const DyadicInterval& b,
                                   unsigned p) {
  return DyadicInterval((a.lo_ + b.lo_).round_down(p), (a.hi_ + b.hi_).round_up(p));
}

DyadicInterval DyadicInterval::sub(const DyadicInterval& a, const DyadicInterval& b,
                                   unsigned p) {
  return DyadicInterval((a.lo_ - b.hi_).round_down(p), (a.hi_ - b.lo_).round_up(p));
}

DyadicInterval DyadicInterval::mul(const DyadicInterval& a, const DyadicInterval& b,
                                   unsigned p) {
  const DyadicRational c[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_,
                               a.hi_ * b.hi_};
  DyadicRational lo = c[0], hi = c[0];
  for (int i = 1; i < 4; ++i) {
    if (c[i] < lo) lo = c[i];
    if (hi < c[i]) hi = c[i];
  }
  return DyadicInterval(lo.round_down(p), hi.round_up(p));
}

namespace {

// Directed quotient a/b as a dyadic with about p significant bits (b != 0).
DyadicRational div_directed(const DyadicRational& a, const DyadicRational& b,
                            unsigned p, bool up) {
  if (a.is_zero()) return DyadicRational();
  // Scale the numerator so the integer quotient carries p+2 bits.
  const std::int64_t scale =
      static_cast<std::int64_t>(b.mantissa_bits()) -
      static_cast<std::int64_t>(a.mantissa_bits()) + static_cast<std::int64_t>(p) + 2;
  mpz_class num = a.mantissa();
  mpz_class den = b.mantissa();
  std::int64_t exp = a.exponent() - b.exponent();
  if (scale > 0) {
    num <<= static_cast<unsigned long>(scale);
    exp -= scale;
  }
  mpz_class q;
  if (up) {
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  } else {
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  }
  return DyadicRational(std::move(q), exp);
}

}  // namespace

DyadicInterval DyadicInterval::div(const DyadicInterval& a, const DyadicInterval& b,
                                   unsigned p) {
  if (b.hi_.sign() < 0) {
    // Normalize to a positive denominator: a/b = (-a)/(-b).
    return div(DyadicInterval(-a.hi_, -a.lo_), DyadicInterval(-b.hi_, -b.lo_), p);
  }
  if (b.lo_.sign() <= 0) {
    throw std::domain_error("interval division by an interval containing zero");
  }
  // b > 0: the minimum quotient uses a.lo, the maximum uses a.hi.
  const DyadicRational lo = std::min(div_directed(a.lo_, b.lo_, p, false),
                                     div_directed(a.lo_, b.hi_, p, false));
  const DyadicRational hi = std::max(div_directed(a.hi_, b.lo_, p, true),
                                     div_directed(a.hi_, b.hi_, p, true));
  return DyadicInterval(lo, hi);
}

DyadicInterval DyadicInterval::pow(const DyadicInterval& x, std::uint64_t e, unsigned p) {
  if (x.lo_.sign() < 0) throw std::domain_error("interval pow of negative base");
  DyadicInterval acc = DyadicInterval::point(DyadicRational(1));
  DyadicInterval base = x;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base, p);
    e >>= 1;
    if (e > 0) base = mul(base, base, p);
  }
  return acc;
}

DyadicInterval operator+(const DyadicInterval& a, const DyadicInterval& b) {
  return DyadicInterval::add(a, b);
}
DyadicInterval operator-(const DyadicInterval& a, const DyadicInterval& b) {
  return DyadicInterval::sub(a, b);
}
DyadicInterval operator*(const DyadicInterval& a, const DyadicInterval& b) {
  return DyadicInterval::mul(a, b);
}

namespace {

// Largest dyadic d with d^2 <= x (when down) or smallest with d^2 >= x (when
// up), carrying about p significant bits.
DyadicRational sqrt_directed(const DyadicRational& x, unsigned p, bool up) {
  if (x.is_zero()) return DyadicRational();
  // Normalize to an even exponent and widen the mantissa to >= 2p+2 bits so
  // the integer root carries p+1 bits.
  mpz_class m = x.mantissa();
  std::int64_t e = x.exponent();
  std::int64_t widen = 2 * static_cast<std::int64_t>(p) + 2 -
                       static_cast<std::int64_t>(x.mantissa_bits());
  if (widen < 0) widen = 0;
  if ((e - widen) % 2 != 0) ++widen;
  m <<= static_cast<unsigned long>(widen);
  e -= widen;
  mpz_class r, rem;
  mpz_sqrtrem(r.get_mpz_t(), rem.get_mpz_t(), m.get_mpz_t());
  if (up && sgn(rem) != 0) ++r;  // exact roots stay exact
  return DyadicRational(std::move(r), e / 2);
}

}  // namespace

DyadicInterval iv_sqrt(const DyadicInterval& x, unsigned p) {
  if (x.lo().sign() < 0) throw NegativeInput();
  return DyadicInterval(sqrt_directed(x.lo(), p, false), sqrt_directed(x.hi(), p, true));
}

DyadicInterval enclose_fraction(const mpz_class& num, const mpz_class& den, unsigned p) {
  const DyadicRational n(num, 0), d(den, 0);
  return DyadicInterval::div(DyadicInterval::point(n), DyadicInterval::point(d), p);
}

}  // namespace cantor
