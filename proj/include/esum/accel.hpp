#pragma once

/**
 * Convergence acceleration for slowly or conditionally convergent series:
 * Levin u-transform, iterated Aitken delta-squared, Richardson extrapolation
 * of checkpointed totals, and a smooth-model least-squares fit for
 * logarithmically convergent partial sums.
 */

#include <array>
#include <vector>

#include "esum/common.hpp"

namespace esum {

/// Extrapolated limit plus a stability-based error estimate.
struct AccelResult {
  cplx value{};
  double err = 0.0;
};

/**
 * Levin u-transform (remainder model omega_n = (beta + n) * a_n) applied to
 * the partial-sum sequence s. The returned value is the most stable entry of
 * the transform diagonal; err is the local diagonal fluctuation around it.
 */
AccelResult levin_u(const std::vector<cplx>& s, double beta = 1.0);

/// Iterated Aitken delta-squared with the same most-stable-entry selection.
AccelResult aitken_iterated(const std::vector<cplx>& s);

/**
 * Least-squares fit of s_j ~ L + sum_{t=1..tpow, m=0..nlog} c_{t,m} ln^m(N_j)/N_j^t,
 * returning L. Used for logarithmically convergent sequences (running
 * harmonic-number factors), where rational extrapolation stalls.
 * Ns must be strictly increasing; nlog is the highest log power in the model.
 */
AccelResult smooth_model_fit(const std::vector<cplx>& s,
                             const std::vector<long long>& Ns, int nlog,
                             int tpow = 4);

/// Two-point Richardson step eliminating an N^{-e} tail term.
inline cplx richardson2(double Na, cplx Ta, double Nb, cplx Tb, int e) {
  double wa = std::pow(Na, e), wb = std::pow(Nb, e);
  return (wb * Tb - wa * Ta) / (wb - wa);
}

/**
 * Two-stage Richardson on three checkpoints (N, 2N, 4N): eliminates the
 * N^{-e1} term pairwise, then the N^{-(e1+1)} term from the two first-stage
 * results.
 */
cplx richardson3(const std::array<long long, 3>& Ns,
                 const std::array<cplx, 3>& Ts, int e1);

}  // namespace esum
