#pragma once

/**
 * Finite generalized harmonic sums, the polylogarithm on the closed unit
 * disk, and an incremental partial-sum tracker shared by the residue engine.
 *
 * Dispatch for Li_p(x):
 *   - p = 1: closed form -log(1 - x), principal branch;
 *   - exact root of unity, p >= 2: Hurwitz-zeta decomposition over the root's
 *     residue classes (fast and accurate to near machine precision);
 *   - floating interior |x| < 1: direct summation with a geometric tail bound;
 *   - floating on the unit circle: accelerated partial sums, flagged
 *     accelerated = true (the Richardson mode falls back to iterated Aitken
 *     here, which is the oscillation-robust member of the family; Richardson
 *     checkpointing proper belongs to the residue sweeps).
 */

#include <map>
#include <span>
#include <string>
#include <vector>

#include "esum/common.hpp"
#include "esum/unit_param.hpp"

namespace esum {

/**
 * The conventional value of the PAIR Li_0(x) + Li_0(x^{-1}). Only the pair
 * sum is defined (the identity registry consumes it in the l = 0 corner of
 * binomial correction sums); Li_0 alone is deliberately not exposed.
 */
inline constexpr double LI0_PAIR = -1.0;

/// Memoization key for one polylogarithm value.
struct PolylogKey {
  int p = 2;
  UnitParam x{};
  /// Canonical form "li|p|<serialized x>"; doubles as the cache-file key.
  std::string canonical() const { return "li|" + std::to_string(p) + "|" + x.serialize(); }
};

/**
 * zeta_n(p; x) = sum_{k=1..n} x^k / k^p, compensated; zeta_0 = 0.
 * Exact roots use drift-free power tables; floating arguments restart the
 * running power from a squared-exponentiation anchor every 4096 steps.
 */
cplx finite_polylog_sum(long long n, int p, const UnitParam& x);

/**
 * Li_p(x) = lim_n zeta_n(p; x) for positive integer p, |x| <= 1,
 * (p, x) != (1, 1). Results are memoized process-wide; repeated calls are
 * served with terms_used = 0.
 *
 * Throws domain_error at (p,x) = (1,1); throws convergence_error (carrying
 * the best estimate) when the tolerance is unreachable within
 * cfg.max_terms.
 */
ValueWithError polylog(int p, const UnitParam& x, const EvalConfig& cfg = {});

/**
 * Element-wise polylog over `keys`, memoized, never aborting the batch:
 * failed keys are skipped in the result map and their error messages are
 * collected into `errors` (when provided) under the same canonical key.
 */
std::map<std::string, ValueWithError> polylog_batch(
    std::span<const PolylogKey> keys, const EvalConfig& cfg = {},
    std::map<std::string, std::string>* errors = nullptr);

/**
 * Incremental history of partial sums zeta_n(p; x) for one fixed (p, x):
 * upto(n) extends the stored history as needed, so a monotone scan over n
 * costs O(1) amortized per query. Used by the residue engine, where the
 * same finite sums appear at every truncation index.
 */
class ZetaHistory {
 public:
  ZetaHistory(int p, const UnitParam& x);

  /// zeta_n(p; x); n >= 0.
  cplx upto(long long n);

  int weight() const { return p_; }
  const UnitParam& arg() const { return x_; }

 private:
  int p_;
  UnitParam x_;
  std::vector<cplx> roots_;   // power table for exact roots
  cplx z_{};                  // floating argument
  cplx zpow_{1.0, 0.0};       // z^m after m steps (floating case)
  std::vector<cplx> sums_;    // sums_[m] = zeta_m
  ckbn_accumulator acc_;      // continuation state (compensated)
};

}  // namespace esum
