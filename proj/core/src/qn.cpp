#include "cantor/qn.hpp"

#include <cmath>
#include <stdexcept>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

const DyadicRational kThreeQuarters = DyadicRational(3).mul_pow2(-2);

DyadicRational pow2_dyadic(int k) { return DyadicRational(1).mul_pow2(k); }

DyadicRational width_budget() { return pow2_dyadic(-8); }

}  // namespace

std::string to_string(Cert c) {
  switch (c) {
    case Cert::True: return "Certified-True";
    case Cert::False: return "Certified-False";
    default: return "Inconclusive";
  }
}

DyadicInterval qn_recursion_step(const DyadicInterval& q, unsigned p) {
  // (3/2) sqrt(1 + 4q) - 3/2 - q
  const DyadicInterval one = DyadicInterval::point(DyadicRational(1));
  const DyadicInterval root = iv_sqrt(one + q.mul_pow2(2), p);
  const DyadicInterval scaled =
      DyadicInterval::mul(root, DyadicInterval::point(DyadicRational(3)), p).mul_pow2(-1);
  const DyadicInterval shifted =
      DyadicInterval::sub(scaled, DyadicInterval::point(DyadicRational(3).mul_pow2(-1)), p);
  return DyadicInterval::sub(shifted, q, p);
}

QnTable q_table(int n_max, unsigned p) {
  if (n_max < 1) throw std::invalid_argument("q table needs at least one entry");
  if (p < 16) throw std::invalid_argument("working precision too small");
  QnTable t;
  t.precision_bits = p;
  // q_1 = (sqrt(45) - 5) / 2
  const DyadicInterval s45 = iv_sqrt(DyadicInterval::point(DyadicRational(45)), p);
  DyadicInterval q =
      DyadicInterval::sub(s45, DyadicInterval::point(DyadicRational(5)), p).mul_pow2(-1);
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) q = qn_recursion_step(t.q.back(), p);
    if (width_budget() < q.width()) {
      throw PrecisionExhausted("q_" + std::to_string(n) + " enclosure wider than 2^-8 at p=" +
                               std::to_string(p));
    }
    if (!(q.lo() > kThreeQuarters && q.hi() < DyadicRational(1))) {
      throw PrecisionExhausted("q_" + std::to_string(n) +
                               " not certified inside (3/4, 1) at p=" + std::to_string(p));
    }
    if (n > 1 && !(q.hi() < t.q.back().lo())) {
      throw PrecisionExhausted("q_" + std::to_string(n) +
                               " not certified below its predecessor at p=" + std::to_string(p));
    }
    t.q.push_back(q);
    t.eps.push_back(DyadicInterval::sub(q, DyadicInterval::point(kThreeQuarters)));
  }
  return t;
}

namespace {

// lhs <= rhs with the trichotomy: conclusive on either side or inconclusive.
Cert certify_le(const DyadicInterval& lhs, const DyadicInterval& rhs) {
  if (lhs.hi() <= rhs.lo()) return Cert::True;
  if (lhs.lo() > rhs.hi()) return Cert::False;
  return Cert::Inconclusive;
}

}  // namespace

std::vector<EpsilonBounds> verify_epsilon_bounds(const QnTable& t) {
  std::vector<EpsilonBounds> out(static_cast<std::size_t>(t.size()));
  for (int n = 1; n <= t.size(); ++n) {
    EpsilonBounds& b = out[static_cast<std::size_t>(n - 1)];
    const DyadicInterval& eps_n = t.eps_at(n);
    b.b = certify_le(eps_n, DyadicInterval::point(pow2_dyadic(-(n + 2))));
    // (d) as eps_n * (2^(n+5) - 1) >= 1, exactly.
    {
      const DyadicRational factor = pow2_dyadic(n + 5) - DyadicRational(1);
      const DyadicInterval scaled =
          DyadicInterval::mul(eps_n, DyadicInterval::point(factor));
      b.d = certify_le(DyadicInterval::point(DyadicRational(1)), scaled);
    }
    if (n < t.size()) {
      const DyadicInterval& eps_next = t.eps_at(n + 1);
      b.a = certify_le(eps_next, eps_n.mul_pow2(-1));
      const DyadicInterval rhs = DyadicInterval::sub(
          eps_n.mul_pow2(-1), DyadicInterval::point(pow2_dyadic(-(2 * n + 5))));
      b.c = certify_le(rhs, eps_next);
    }
  }
  return out;
}

Cert certify_ratio_bound(const QnTable& t, int n, int offset) {
  const DyadicRational factor = DyadicRational(1) - pow2_dyadic(-(n + offset));
  const DyadicInterval rhs =
      DyadicInterval::mul(t.q_at(n), DyadicInterval::point(factor));
  return certify_le(t.q_at(n + 1), rhs);
}

std::vector<Cert> verify_ratio_bound(const QnTable& t) {
  std::vector<Cert> out;
  for (int n = 1; n < t.size(); ++n) out.push_back(certify_ratio_bound(t, n));
  return out;
}

namespace {

// 2 (q_{n+1} / q_n) - 1 as an interval at the table's precision.
DyadicInterval doubled_ratio_minus_one(const QnTable& t, int n) {
  const DyadicInterval ratio = DyadicInterval::div(t.q_at(n + 1), t.q_at(n), t.precision_bits);
  return DyadicInterval::sub(ratio.mul_pow2(1), DyadicInterval::point(DyadicRational(1)));
}

}  // namespace

std::vector<Cert> verify_power_bound(const QnTable& t, int n_max_power) {
  const DyadicInterval bound = e_inv32(t.precision_bits);
  std::vector<Cert> out;
  for (int n = 1; n <= n_max_power && n < t.size(); ++n) {
    const DyadicInterval base = doubled_ratio_minus_one(t, n);
    if (base.lo().sign() < 0) {
      out.push_back(Cert::Inconclusive);
      continue;
    }
    const DyadicInterval powered =
        DyadicInterval::pow(base, std::uint64_t{1} << n, t.precision_bits);
    out.push_back(certify_le(powered, bound));
  }
  return out;
}

DyadicInterval e_inv32(unsigned p) {
  // Alternating series sum_k (-1/32)^k / k! with strictly decreasing terms:
  // consecutive partial sums bracket the limit.  Partial sums are exact
  // rationals; the bracket is rounded outward at the end.
  const int terms = static_cast<int>(p / 8) + 16;
  mpq_class sum(0), term(1);
  for (int k = 0; k < terms; ++k) {
    sum += term;
    term /= -32 * (k + 1);
  }
  const mpq_class next = sum + term;  // one further partial sum
  const mpq_class& below = (sum < next) ? sum : next;
  const mpq_class& above = (sum < next) ? next : sum;
  const DyadicInterval lo_iv = enclose_fraction(below.get_num(), below.get_den(), p + 4);
  const DyadicInterval hi_iv = enclose_fraction(above.get_num(), above.get_den(), p + 4);
  return DyadicInterval(lo_iv.lo(), hi_iv.hi());
}

int compute_f(int n) {
  if (n < 1) throw std::invalid_argument("f is defined for n >= 1");
  const unsigned p = 192;
  const DyadicInterval base = e_inv32(p);
  const DyadicRational threshold = DyadicRational(1).mul_pow2(-n);
  // Candidate from a floating estimate of 32 n ln 2, then certify exactly.
  int k = static_cast<int>(std::ceil(32.0L * n * 0.693147180559945309417L)) - 2;
  if (k < 1) k = 1;
  DyadicInterval power = DyadicInterval::pow(base, static_cast<std::uint64_t>(k), p);
  for (;; ++k) {
    const bool holds = power.hi() <= threshold;
    const bool fails = power.lo() > threshold;
    if (!holds && !fails) {
      throw PrecisionExhausted("f(" + std::to_string(n) + ") comparison inconclusive");
    }
    if (holds) {
      return k;
    }
    power = DyadicInterval::mul(power, base, p);
  }
}

DyadicInterval u_measure(int n, const QnTable& t) {
  if (n < 1 || n > t.size()) throw std::invalid_argument("u_measure index out of table");
  const unsigned p = t.precision_bits;
  DyadicInterval u = DyadicInterval::sub(t.q_at(1).mul_pow2(1),
                                         DyadicInterval::point(DyadicRational(1)), p);
  for (int i = 1; i < n; ++i) {
    const DyadicInterval factor = doubled_ratio_minus_one(t, i);
    if (factor.lo().sign() < 0) {
      throw PrecisionExhausted("u_measure factor not certified positive");
    }
    const DyadicInterval powered = DyadicInterval::pow(factor, std::uint64_t{1} << i, p);
    u = DyadicInterval::mul(u, powered, p);
    if (width_budget() < u.width()) {
      throw PrecisionExhausted("u_measure enclosure wider than 2^-8");
    }
  }
  return u;
}

mpq_class barycenter_value(int sigma_len) {
  if (sigma_len < 0) throw std::invalid_argument("negative cylinder length");
  mpq_class q(1, mpz_class(1) << static_cast<unsigned long>(sigma_len));
  q.canonicalize();
  return q;
}

mpq_class barycenter_auxiliary(int n) {
  if (n < 0) throw std::invalid_argument("negative index");
  mpq_class q(1, mpz_class(1) << static_cast<unsigned long>(n + 2));
  q.canonicalize();
  return q;
}

bool verify_barycenter_equation(int n) {
  const mpq_class s = barycenter_auxiliary(n);
  const mpq_class two_pow(1, mpz_class(1) << static_cast<unsigned long>(n));
  const mpq_class lhs = s;
  const mpq_class rhs =
      mpq_class(1, 6) * two_pow + mpq_class(0) + mpq_class(1, 6) * (2 * s);
  return lhs == rhs;
}

}  // namespace cantor
