#pragma once

/**
 * Multiple polylogarithms Li_{k_1,...,k_r}(x_1,...,x_r) summed over
 * ascending chains 0 < n_1 < ... < n_r — the FIRST index is innermost and
 * the convergence condition rides on the LAST pair (k_r, x_r). This is the
 * convention used throughout the library; the reversed convention found
 * elsewhere in the literature is never used here.
 *
 * Alternating values are written in bar notation: "bar3,2,bar1,4" (or the
 * ASCII suffix form "3-,2,1-,4") puts argument -1 exactly at the barred
 * positions, in place, without reversal.
 */

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "esum/common.hpp"
#include "esum/polylog.hpp"
#include "esum/unit_param.hpp"

namespace esum {

/// One nested-sum specification. depth = r, weight = sum of exponents.
struct MplSpec {
  std::vector<int> k;        ///< positive exponents, first = innermost index
  std::vector<UnitParam> x;  ///< same length as k

  int depth() const { return int(k.size()); }
  int weight() const {
    int w = 0;
    for (int v : k) w += v;
    return w;
  }
  /// Canonical key "mpl|k1,k2,...|x1;x2;...".
  std::string canonical() const;
};

/**
 * Validates shape and convergence: either every cumulative suffix product
 * |x_j ... x_r| is strictly inside the disk (interior case), or every
 * argument is an exact root of unity and (k_r, x_r) != (1, 1). Mixed cases
 * that satisfy neither are rejected, not guessed.
 */
void validate_mpl(const MplSpec& spec);

/**
 * Evaluates the nested sum by a single ascending pass that updates the
 * depth prefixes in descending depth order (so each update reads the
 * previous index's prefix at n-1). Interior tails are bounded
 * geometrically. Boundary (all-root) tails are folded over the least
 * common root order, after which the checkpoints follow a polynomial model
 * in 1/N (times ln N powers for each inner (1, 1) pair); any accelerated
 * mode extrapolates that model by structured least squares, accepting a
 * stage only when the next stage confirms it, while AccelMode::None sums
 * directly with a midpoint-difference error heuristic.
 */
ValueWithError mpl_eval(const MplSpec& spec, const EvalConfig& cfg = {});

/**
 * Truncation oracle: the literal sum over chains 0 < n_1 < ... < n_r <= N,
 * compensated, no acceleration and no tail estimate. Cost O(N^{r-1})
 * (the innermost level is a running prefix); intended for depth <= 3.
 */
cplx brute_force_mpl(const MplSpec& spec, long long N);

/// Parses bar notation ("bar3,2,bar1,4" or "3-,2,1-,4") into an MplSpec.
/// Throws domain_error on syntax errors and on the divergent trailing
/// unbarred 1.
MplSpec parse_amzv(const std::string& text);

/// parse_amzv followed by mpl_eval.
ValueWithError amzv_eval(const std::string& text, const EvalConfig& cfg = {});

/**
 * One signed product term: sign * (optional polylog prefactor) * nested sum.
 * The stuffle expansions and the product-chain rewriting emit lists of
 * these; eval_term_sum evaluates and adds them with error budgeting.
 */
struct MplProductTerm {
  double sign = 1.0;
  std::optional<PolylogKey> prefactor;
  MplSpec mpl;
};

ValueWithError eval_term_sum(std::span<const MplProductTerm> terms,
                             const EvalConfig& cfg = {});

}  // namespace esum
