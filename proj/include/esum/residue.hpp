#pragma once

/**
 * Truncated-window residue engine for pole-factor kernels.
 *
 * A kernel is a product of "harmonic factor" expansions
 *
 *   F(s) = Phi(s; x) * prod_j hat-phi_{p_j}(s; x_j) / s^q      (variant F)
 *   G(s) =            prod_j hat-phi_{p_j}(s; x_j) / s^q       (variant G)
 *
 * where hat-phi_p is the order-p normalized factor (pole of order p at
 * every non-positive integer center) and Phi carries an additional simple
 * pole at every integer. Each routine expands every factor as a truncated
 * Laurent window around an integer center, multiplies the windows (the
 * truncation algebra guarantees the -1 order stays trusted), and reads
 * off the residue. Summing residues over all poles telescopes to zero,
 * which is the machine check the verification layer drives.
 */

#include <utility>
#include <vector>

#include "esum/common.hpp"
#include "esum/laurent.hpp"
#include "esum/unit_param.hpp"

namespace esum {

enum class KernelVariant { F, G };

/**
 * Global sign convention for the factor product. NormalizedFactors is the
 * default normalization used by every formula in this library;
 * DerivativeProduct differs from it by (-1)^r (r = number of factors), the
 * convention one gets by keeping raw derivative factors instead. Reports
 * carry a note when r is odd, where the two conventions visibly disagree.
 */
enum class KernelSign { NormalizedFactors, DerivativeProduct };

struct KernelSpec {
  KernelVariant variant = KernelVariant::F;
  std::vector<int> p;          ///< factor orders, one per factor
  std::vector<UnitParam> args; ///< factor arguments, parallel to p
  int q = 1;                   ///< central pole order
  UnitParam phi_arg{};         ///< F only: argument of the simple-pole factor
  KernelSign sign = KernelSign::NormalizedFactors;

  int depth() const { return int(p.size()); }
  int weight() const;
};

/**
 * Structural checks: positive orders, matching lengths, and the two hard
 * preconditions — a factor with (p_j, x_j) = (1, 1) has no finite
 * expansion (its constant term would be the divergent Li_1(1)), and the
 * simple-pole argument of an F kernel must be an exact root of unity so
 * its power table stays drift-free over long scans.
 */
void validate_kernel(const KernelSpec& spec);

/**
 * Coefficient combination appearing throughout the expansions:
 *
 *   phi_comb(m, x) = (-1)^m Li_{m+1}(x) - Li_{m+1}(1/x),
 *
 * on-circle x only, with the special value phi_comb(0, 1) = 0 (the two
 * divergences cancel in the pair limit).
 */
cplx phi_comb(int m, const UnitParam& x, const EvalConfig& cfg = {});

/**
 * Window of the order-p factor around the center -n (n >= 0), in the
 * local variable t = s + n: orders -p through analytic_terms.
 * The order -p coefficient is x^n; orders between -p and 0 vanish; the
 * analytic coefficients combine Li values with the scaled prefix
 * v_n(l) = x^n zeta_n(l; 1/x), which stays bounded where the raw prefix
 * overflows for |x| < 1.
 */
LaurentSeries phi_expansion_neg(int p, const UnitParam& x, long long n,
                                int analytic_terms, const EvalConfig& cfg = {});

/**
 * Window of the order-p factor around the center +n (n >= 1): analytic
 * there, orders 0 through analytic_terms. Coefficients are binomial
 * multiples of the scaled tails x^{-n} (Li_l(x) - zeta_{n-1}(l; x)),
 * computed as literal differences for on-circle arguments and as direct
 * geometric tails for interior ones (where the difference cancels
 * catastrophically).
 */
LaurentSeries phi_expansion_pos(int p, const UnitParam& x, long long n,
                                int analytic_terms, const EvalConfig& cfg = {});

/**
 * Window of the simple-pole factor Phi(s; x) around the integer center:
 * order -1 coefficient x^{-center}, analytic orders m carrying
 * x^{-center} phi_comb(m, x). On-circle x required.
 */
LaurentSeries big_phi_expansion(const UnitParam& x, long long center,
                                int analytic_terms, const EvalConfig& cfg = {});

/**
 * Incremental engine state for scanning poles in ascending |pole| order:
 * factor prefixes, scaled tails, and Li values are carried across calls,
 * so a full scan costs O(window^2) per pole. residue_zero() may be read
 * at any time; advance_to(n) then residue_neg()/residue_pos() serve the
 * poles at -n and +n. The configured sign convention is applied.
 */
class KernelWorkspace {
 public:
  explicit KernelWorkspace(const KernelSpec& spec, const EvalConfig& cfg = {});
  ~KernelWorkspace();
  KernelWorkspace(const KernelWorkspace&) = delete;
  KernelWorkspace& operator=(const KernelWorkspace&) = delete;

  const KernelSpec& spec() const;
  /// Advances the shared prefix state; n must not decrease.
  void advance_to(long long n);
  long long position() const;
  cplx residue_zero();
  cplx residue_neg();  ///< residue at -position()
  cplx residue_pos();  ///< residue at +position(); identically 0 for G

 private:
  struct Impl;
  Impl* impl_;
};

/// One-shot residue at an arbitrary integer pole (fresh workspace).
cplx kernel_residue(const KernelSpec& spec, long long pole,
                    const EvalConfig& cfg = {});

/**
 * Scan of all poles with |pole| <= n_max (n_max is first aligned down to a
 * multiple of 4 * fold, where fold is the least common order of the
 * on-circle parameters). The three aligned checkpoints feed an iterated
 * two-point elimination in 1/N starting at exponent max(q-1, 1); the scan
 * passes when the extrapolated total vanishes within 10x the target
 * tolerance (boundary tolerance when any parameter sits on the circle).
 */
struct ResidueReport {
  cplx raw_total{};
  cplx extrapolated{};
  long long n_max = 0;  ///< aligned scan depth actually used
  long long fold = 1;
  double target_tol = 0.0;
  bool pass = false;
  /// residues near the center (|pole| small), for display; capped size
  std::vector<std::pair<long long, cplx>> per_pole;
};

ResidueReport residue_total(const KernelSpec& spec, long long n_max,
                            const EvalConfig& cfg = {});

/**
 * Splits the same residue scan of an F kernel into the forward series
 * (the -n poles' principal contribution, signed (-1)^r), the mirror
 * series (signed (-1)^{p_1+...+p_r+q}, arguments inverted), and the
 * remainder R = total - forward - mirror; each component is extrapolated
 * like residue_total. Exact-root arguments required (the two series fold
 * over the common root order). The total telescopes to zero, so
 * forward + mirror + remainder == 0 up to extrapolation error — the
 * machine form of the parity decomposition.
 */
struct ParityReport {
  cplx forward{};
  cplx mirror{};
  cplx remainder{};
  cplx total{};
  long long n_max = 0;
  long long fold = 1;
};

ParityReport parity_decompose(const KernelSpec& spec, long long n_max,
                              const EvalConfig& cfg = {});

}  // namespace esum
