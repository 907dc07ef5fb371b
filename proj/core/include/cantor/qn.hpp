#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "cantor/dyadic.hpp"

namespace cantor {

/// Outcome of a certified inequality check.  Interval straddles can never
/// refute, so False requires a conclusive witness on the opposite side.
enum class Cert : int { True, Inconclusive, False };

std::string to_string(Cert c);

/// Certified enclosures of the hitting probabilities q_n (1-indexed) and of
/// eps_n = q_n - 3/4, produced by iterating the recurrence
/// q_{n+1} = (3/2) sqrt(1 + 4 q_n) - 3/2 - q_n from q_1 = (sqrt(45) - 5) / 2.
struct QnTable {
  unsigned precision_bits = 0;
  std::vector<DyadicInterval> q;    // q[n-1] encloses q_n
  std::vector<DyadicInterval> eps;  // eps[n-1] encloses eps_n

  int size() const { return static_cast<int>(q.size()); }
  const DyadicInterval& q_at(int n) const { return q.at(static_cast<std::size_t>(n - 1)); }
  const DyadicInterval& eps_at(int n) const { return eps.at(static_cast<std::size_t>(n - 1)); }
};

/// One application of the q-recurrence with outward rounding at p bits.
DyadicInterval qn_recursion_step(const DyadicInterval& q, unsigned p);

/// Builds the table for n = 1..n_max, certifying 3/4 < q_{n+1} < q_n < 1 as
/// it goes.  Throws PrecisionExhausted once any enclosure is wider than 2^-8.
QnTable q_table(int n_max, unsigned p);

/// The four eps_n inequalities, checked per index:
///   (a) eps_{n+1} <= eps_n / 2            (for n < size)
///   (b) eps_n <= 2^-(n+2)
///   (c) eps_{n+1} >= eps_n / 2 - 2^-(2n+5)  (for n < size)
///   (d) eps_n >= 1 / (2^(n+5) - 1)
struct EpsilonBounds {
  Cert a = Cert::Inconclusive;
  Cert b = Cert::Inconclusive;
  Cert c = Cert::Inconclusive;
  Cert d = Cert::Inconclusive;
};
std::vector<EpsilonBounds> verify_epsilon_bounds(const QnTable& t);

/// q_{n+1}/q_n <= 1 - 2^-(n+offset); the published bound uses offset 6.
Cert certify_ratio_bound(const QnTable& t, int n, int offset = 6);
std::vector<Cert> verify_ratio_bound(const QnTable& t);

/// (2 q_{n+1}/q_n - 1)^(2^n) <= e^(-1/32), checked for n = 1..n_max_power.
std::vector<Cert> verify_power_bound(const QnTable& t, int n_max_power = 12);

/// Enclosure of e^(-1/32) from the alternating Taylor series, outward-rounded
/// at p bits.
DyadicInterval e_inv32(unsigned p);

/// Smallest k with e^(-k/32) <= 2^-n, certified by interval comparisons.
int compute_f(int n);

/// Certified enclosure of (2 q_1 - 1) * prod_{i=1}^{n-1} (2 q_{i+1}/q_i - 1)^(2^i),
/// the measure of the onto-up-to-level-n event.
DyadicInterval u_measure(int n, const QnTable& t);

/// The average measure a cylinder of the given length receives under the
/// pushforward law: exactly 2^-len.
mpq_class barycenter_value(int sigma_len);

/// The auxiliary s_{n+1} = 2^-n / 4 solving
/// s = (1/3)(1/2) 2^-n + (1/3) 0 + (1/3)(1/2) 2s.
mpq_class barycenter_auxiliary(int n);

/// Exact-rational check that barycenter_auxiliary(n) solves its equation.
bool verify_barycenter_equation(int n);

}  // namespace cantor
