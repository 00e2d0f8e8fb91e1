#pragma once

/**
 * Harmonic-weighted geometric sums
 *
 *     sum_{n >= 1}  [ prod_j zeta_n(p_j; x_j) ]  x^n / n^q,
 *
 * where zeta_n(p; a) = sum_{k <= n} a^k / k^p is the generalized harmonic
 * prefix. Public arguments live on the closed unit disk; the wide-domain
 * evaluator in `detail` additionally accepts factor arguments outside the
 * circle (the identity layer feeds it inverted parameters) by rescaling
 * each such factor and absorbing its growth into the outer rotation.
 */

#include <string>
#include <vector>

#include "esum/common.hpp"
#include "esum/mpl.hpp"
#include "esum/polylog.hpp"
#include "esum/unit_param.hpp"

namespace esum {

struct EulerSumSpec {
  std::vector<int> p;        ///< inner exponents, one per harmonic factor
  std::vector<UnitParam> x;  ///< inner arguments, parallel to p
  int q = 2;                 ///< outer exponent
  UnitParam outer{};         ///< outer argument (defaults to 1)

  int depth() const { return int(p.size()); }
  int weight() const;

  /// "es|p:arg,p:arg|q|outer" with the factor pairs sorted, so any
  /// permutation of the (p_j, x_j) pairs maps to the same key (the sum is
  /// symmetric in its factors).
  std::string canonical() const;
};

/**
 * Shape and convergence checks; a violated precondition raises a domain
 * error naming the clause, e.g. "(q, x) = (1, 1)" for the divergent
 * harmonic corner.
 */
void validate_eulersum(const EulerSumSpec& spec);

/**
 * Evaluates the sum after reordering the factors canonically, so permuted
 * inputs return bitwise-identical results, and memoizes the value under
 * spec.canonical(). Interior outer arguments stop on a geometric tail
 * bound; on-circle outer arguments fold the partial sums over the least
 * common root order and extrapolate (a conditionally convergent q = 1
 * boundary sum is always extrapolated, whatever the configured mode, since
 * direct summation cannot meet any tolerance there).
 */
ValueWithError euler_sum_eval(const EulerSumSpec& spec,
                              const EvalConfig& cfg = {});

/**
 * Splits the inner index at k < n versus k = n:
 *
 *   sum_n zeta_n(p; x) y^n / n^q  =  Li_{p,q}(x, y) + Li_{p+q}(x y).
 *
 * Exponent lists are written innermost first throughout.
 */
std::vector<MplProductTerm> stuffle_linear(int p, const UnitParam& x, int q,
                                           const UnitParam& outer);

/**
 * Two harmonic factors expand into the six interleavings of the two inner
 * indices with each other and with the outer index:
 *
 *   Li_{p1,p2,q}(x1,x2,x) + Li_{p2,p1,q}(x2,x1,x) + Li_{p1+p2,q}(x1 x2, x)
 *   + Li_{p1,p2+q}(x1, x2 x) + Li_{p2,p1+q}(x2, x1 x)
 *   + Li_{p1+p2+q}(x1 x2 x).
 */
std::vector<MplProductTerm> stuffle_quadratic(int p1, int p2,
                                              const UnitParam& x1,
                                              const UnitParam& x2, int q,
                                              const UnitParam& outer);

/**
 * Rewrites the two-factor sum as nested polylogarithms of chained
 * arguments:
 *
 *   - Li_{p2,q,p1}(x2, x, x1) - Li_{p2+q,p1}(x2 x, x1)
 *   + Li_{p1}(x1) [ Li_{p2,q}(x2, x) + Li_{p2+q}(x2 x) ],
 *
 * valid when (p1, x1) != (1, 1) and (q, x) != (1, 1); violating either
 * precondition raises a domain error naming it.
 */
std::vector<MplProductTerm> quadratic_to_mpl_chain(int p1, int p2,
                                                   const UnitParam& x1,
                                                   const UnitParam& x2, int q,
                                                   const UnitParam& outer);

namespace detail {

/**
 * Series parameter for the wide-domain evaluator: either an exact root of
 * unity (drift-free powers, known folding period) or a free complex value,
 * inside or outside the unit circle.
 */
struct WideParam {
  bool exact = false;
  RootOfUnity root{};
  cplx val{1.0, 0.0};

  static WideParam from(const UnitParam& u);
  static WideParam approx(cplx z);
  WideParam inverse() const;
  WideParam times(const WideParam& o) const;
  bool is_one() const;
  /// Canonical text used in memo keys.
  std::string serialize() const;
};

/**
 * Wide-domain evaluator behind euler_sum_eval. A factor argument with
 * |a| > 1 is rescaled: u_n = a^{-n} zeta_n(p; a) obeys the contraction
 * u_n = u_{n-1} / a + n^{-p} (numerically stable where the raw prefix
 * overflows), and the extracted a^n joins the outer geometric factor, so
 * the effective rotation is x * prod(scaled a_j). Convergence is decided
 * on rho = |x| * prod max(|a_j|, 1); rho beyond 1 is rejected. Results
 * are memoized under a wide-key so repeated identity checks are warm.
 */
ValueWithError euler_sum_raw(const std::vector<int>& p,
                             const std::vector<WideParam>& args, int q,
                             const WideParam& outer, double tol,
                             const EvalConfig& cfg);

}  // namespace detail

}  // namespace esum
