#pragma once

/**
 * Hurwitz zeta for integer exponents: the evaluation backend that turns a
 * polylogarithm at an exact root of unity into a short linear combination of
 * smooth real sums.
 */

#include "esum/common.hpp"

namespace esum {

/**
 * Sum over m >= 0 of (m + a)^{-p} for integer p >= 2 and real a in (0, 1].
 *
 * Direct head of adaptively chosen length plus an Euler-Maclaurin tail of
 * order `em_terms` (Bernoulli corrections); the head length is grown until
 * the first neglected correction term falls below target_tol / 10.
 *
 * Throws domain_error for a <= 0, a > 1, p < 2, or em_terms outside [0, 10].
 */
double hurwitz_zeta(int p, double a, double target_tol = 1e-14,
                    int em_terms = 8);

}  // namespace esum
