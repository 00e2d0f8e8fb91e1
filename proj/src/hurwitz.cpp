#include "esum/hurwitz.hpp"

#include <algorithm>

namespace esum {

namespace {

/**
 * Magnitude of the Euler-Maclaurin correction term of index j for the sum
 * Sigma (m+a)^{-p} cut at head length K:
 *   B_{2j} / (2j)! * p(p+1)...(p+2j-2) * (K+a)^{-(p+2j-1)}.
 */
double em_term_magnitude(int p, double a, long long K, int j) {
  double fact = 1.0;
  for (int i = 1; i <= 2 * j; ++i) fact *= double(i);
  double rise = 1.0;
  for (int i = 0; i <= 2 * j - 2; ++i) rise *= double(p + i);
  double z = a + double(K);
  return std::abs(kBernoulliEven[j - 1]) / fact * rise *
         std::pow(z, -double(p + 2 * j - 1));
}

}  // namespace

double hurwitz_zeta(int p, double a, double target_tol, int em_terms) {
  if (a <= 0.0) throw domain_error("hurwitz_zeta: a must be positive");
  if (a > 1.0) throw domain_error("hurwitz_zeta: a must lie in (0, 1]");
  if (p < 2) throw domain_error("hurwitz_zeta: exponent p must be >= 2");
  if (em_terms < 0 || em_terms > 10)
    throw domain_error("hurwitz_zeta: em_terms out of range [0, 10]");

  const double tol = std::max(target_tol, 1e-16) / 10.0;
  // The error of the order-M tail is governed by the first neglected
  // Bernoulli correction (estimated with the last available one at M = 10).
  const int j_est = em_terms < 10 ? em_terms + 1 : 10;
  long long K = 16;
  while (K < (1LL << 22) && em_term_magnitude(p, a, K, j_est) > tol) K *= 2;

  kbn_accumulator acc;
  for (long long m = K; m-- > 0;)  // ascending magnitude
    acc.add(std::pow(double(m) + a, -double(p)));
  stats::add_terms(K);

  const double z = a + double(K);
  acc.add(std::pow(z, 1.0 - double(p)) / double(p - 1));
  acc.add(0.5 * std::pow(z, -double(p)));

  double fact = 1.0;  // (2j)!
  double rise = 1.0;  // p(p+1)...(p+2j-2)
  for (int j = 1; j <= em_terms; ++j) {
    fact *= double(2 * j - 1) * double(2 * j);
    rise = (j == 1) ? double(p) : rise * double(p + 2 * j - 3) * double(p + 2 * j - 2);
    acc.add(kBernoulliEven[j - 1] / fact * rise *
            std::pow(z, -double(p + 2 * j - 1)));
  }
  return acc.value();
}

}  // namespace esum
