#pragma once

/**
 * Shared scalar types for the Euler-sum evaluation library: complex alias,
 * error-tracked values, evaluation configuration, exception taxonomy,
 * compensated summation, and small combinatorial helpers.
 */

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace esum {

using cplx = std::complex<double>;

/// Violated precondition or unsatisfiable domain constraint (maps to CLI exit 2).
class domain_error : public std::runtime_error {
 public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// Requested tolerance was not reached within the term budget (CLI exit 1).
/// Carries the best estimate obtained so far together with its error estimate.
class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& what, cplx best, double err)
      : std::runtime_error(what), best_estimate(best), est_err(err) {}
  cplx best_estimate{};
  double est_err{};
};

/// Internal invariant violation (a bug, e.g. an undersized series window).
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

/// A computed complex value with a heuristic absolute error bound and
/// bookkeeping about how it was obtained.
struct ValueWithError {
  cplx value{};
  double abs_err = 0.0;        ///< claimed absolute error (finite; 0 only for exact outputs)
  long long terms_used = 0;    ///< series terms consumed (0 on a memo/cache hit)
  bool accelerated = false;    ///< true when an extrapolation produced the value
};

/// Convergence-acceleration strategy for boundary (unit-circle) series.
enum class AccelMode {
  None,                      ///< direct partial sums only
  AitkenIterated,            ///< iterated Aitken delta-squared on block partial sums
  LevinU,                    ///< Levin u-transform on block partial sums
  RichardsonOnPartialTotals  ///< Richardson extrapolation of checkpointed totals
};

/// Evaluation configuration shared by every evaluator.
struct EvalConfig {
  double target_tol = 1e-8;           ///< tolerance for interior (|z|<1) evaluations
  double boundary_target_tol = 1e-6;  ///< tolerance for unit-circle evaluations
  long long max_terms = 2'000'000;    ///< budget of series terms per evaluation
  AccelMode accel_mode = AccelMode::AitkenIterated;
  int hurwitz_em_terms = 8;           ///< Euler-Maclaurin correction order for Hurwitz zeta

  void validate() const {
    if (!(target_tol >= 1e-14) || !(boundary_target_tol >= 1e-14))
      throw domain_error("EvalConfig: tolerances must be >= 1e-14");
    if (max_terms < 10) throw domain_error("EvalConfig: max_terms must be >= 10");
    if (hurwitz_em_terms < 0 || hurwitz_em_terms > 10)
      throw domain_error("EvalConfig: hurwitz_em_terms out of range [0,10]");
  }
};

/**
 * Kahan-Babuska-Neumaier compensated accumulator for doubles.
 * The running compensation recovers the low-order bits lost when terms of
 * very different magnitude are added, keeping long series sums near
 * round-to-nearest of the exact sum.
 */
class kbn_accumulator {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }
  void reset() { sum_ = comp_ = 0.0; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Component-wise compensated accumulator for complex series.
class ckbn_accumulator {
 public:
  void add(cplx z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  cplx value() const { return {re_.value(), im_.value()}; }
  void reset() {
    re_.reset();
    im_.reset();
  }

 private:
  kbn_accumulator re_, im_;
};

/// Binomial coefficient as a double; 0 for r < 0, n < 0 or n < r.
/// Arguments stay far below the 2^53 exact-integer range in this library.
inline double binom(long long n, long long r) {
  if (r < 0 || n < 0 || n < r) return 0.0;
  r = std::min(r, n - r);
  double out = 1.0;
  for (long long i = 1; i <= r; ++i) out = out * double(n - r + i) / double(i);
  return out;
}

/// n-th power of a complex number by repeated squaring (n >= 0).
inline cplx cpow_u(cplx z, long long n) {
  cplx out{1.0, 0.0};
  while (n > 0) {
    if (n & 1) out *= z;
    z *= z;
    n >>= 1;
  }
  return out;
}

/// Integer power n^e as a double (n >= 1, e >= 0); exact below 2^53.
inline double ipow(long long n, int e) {
  double out = 1.0, b = double(n);
  while (e > 0) {
    if (e & 1) out *= b;
    b *= b;
    e >>= 1;
  }
  return out;
}

/// (-1)^k without calling pow.
inline double neg1pow(long long k) { return (k % 2 == 0) ? 1.0 : -1.0; }

/// Riemann zeta at integer argument p >= 2.
inline double zeta_int(int p) { return std::riemann_zeta(double(p)); }

/// Dirichlet eta at integer argument p >= 1: eta(1) = ln 2, else (1-2^{1-p}) zeta(p).
inline double eta_int(int p) {
  if (p == 1) return std::log(2.0);
  return (1.0 - std::pow(2.0, 1 - p)) * zeta_int(p);
}

/// Bernoulli numbers B_2, B_4, ..., B_20 (even indices; odd ones vanish).
inline const double kBernoulliEven[10] = {
    1.0 / 6.0,      -1.0 / 30.0,    1.0 / 42.0,     -1.0 / 30.0,   5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0,     -3617.0 / 510.0, 43867.0 / 798.0,
    -174611.0 / 330.0};

namespace stats {
/// Process-wide count of series terms summed; lets callers verify that a
/// warm value cache really avoids recomputation.
inline std::atomic<long long>& terms_summed() {
  static std::atomic<long long> counter{0};
  return counter;
}
inline void add_terms(long long n) {
  terms_summed().fetch_add(n, std::memory_order_relaxed);
}
}  // namespace stats

}  // namespace esum
