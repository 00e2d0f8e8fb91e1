#pragma once

/**
 * Truncated Laurent windows: finitely many coefficients of an expansion
 * around a chosen center, together with the highest order that is still
 * trusted. Arithmetic propagates the truncation honestly — a product only
 * keeps orders whose convolution never touches an unknown coefficient —
 * so window algebra can certify residues instead of silently inventing
 * coefficients.
 */

#include <vector>

#include "esum/common.hpp"

namespace esum {

/**
 * sum_{k = min_order}^{trunc_order} coeffs[k - min_order] (s - center)^k.
 * Orders above trunc_order are unknown; coeffs.size() must equal
 * trunc_order - min_order + 1 (window length >= 1).
 */
struct LaurentSeries {
  cplx center{};
  long long min_order = 0;
  std::vector<cplx> coeffs;
  long long trunc_order = 0;
};

/// Shape check: consistent window length and finite data.
void ls_validate(const LaurentSeries& a);

/// Sum around a common center; the result window is the intersection of
/// trusted orders (and the union of starting orders, padded with zeros).
LaurentSeries ls_add(const LaurentSeries& a, const LaurentSeries& b);

LaurentSeries ls_scale(const LaurentSeries& a, cplx c);

/**
 * Cauchy product around a common center. The trusted top order is
 * min(a.min + b.trunc, a.trunc + b.min): one order higher would already
 * convolve against an unknown coefficient.
 */
LaurentSeries ls_mul(const LaurentSeries& a, const LaurentSeries& b);

/// Strict window accessor: asking outside [min_order, trunc_order] in
/// either direction raises a domain error rather than guessing zero.
cplx ls_coeff(const LaurentSeries& a, long long k);

/**
 * Coefficient of (s - center)^{-1} with the analytic convention: a window
 * that starts above -1 has no pole there, so the residue is exactly zero;
 * a window truncated below -1 cannot certify anything and raises.
 */
cplx ls_residue(const LaurentSeries& a);

/// Pointwise evaluation of the stored window at s (truncation ignored).
cplx ls_eval(const LaurentSeries& a, cplx s);

/**
 * The simple pole power 1/s^q re-expanded around a != 0:
 *
 *   1/s^q = sum_{k >= 0} C(k+q-1, q-1) (-1)^k a^{-q-k} (s - a)^k,
 *
 * truncated to `terms` coefficients (orders 0 .. terms-1).
 */
LaurentSeries pole_shift_binomial(int q, cplx a, int terms);

}  // namespace esum
