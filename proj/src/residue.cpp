#include "esum/residue.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "esum/accel.hpp"
#include "esum/polylog.hpp"

namespace esum {

namespace {

/// Engine-internal polylog accuracy: coefficient errors feed every residue,
/// so the factor values are requested well below the caller's tolerance.
EvalConfig engine_config(const EvalConfig& cfg) {
  EvalConfig out = cfg;
  out.target_tol = std::min(cfg.target_tol, 1e-12);
  out.boundary_target_tol = std::min(cfg.boundary_target_tol, 1e-12);
  return out;
}

/// Width of every factor window: total pole depth plus margin, so the
/// product's trusted range always reaches the -1 order.
int window_terms(const KernelSpec& spec) {
  int sum_p = 0;
  for (int pj : spec.p) sum_p += pj;
  return sum_p + spec.q + 2;
}

/// Least common fold period of the on-circle parameters (1 if none).
long long fold_period(const KernelSpec& spec) {
  long long m = 1;
  auto absorb = [&m](const UnitParam& u) {
    if (u.is_exact() && u.order() > 0) m = std::lcm(m, u.order());
  };
  if (spec.variant == KernelVariant::F) absorb(spec.phi_arg);
  for (const UnitParam& a : spec.args) absorb(a);
  return m;
}

bool all_on_circle(const KernelSpec& spec) {
  for (const UnitParam& a : spec.args)
    if (!a.on_circle()) return false;
  return true;
}

/// Analytic window of 1/s^q around `center` (orders 0..terms), or the exact
/// principal window at the origin padded with explicit zero analytic orders.
LaurentSeries central_pole_window(int q, long long center, int terms) {
  if (center == 0) {
    LaurentSeries w;
    w.center = cplx(0.0, 0.0);
    w.min_order = -q;
    w.trunc_order = terms;
    w.coeffs.assign(size_t(terms + q + 1), cplx(0.0, 0.0));
    w.coeffs[0] = cplx(1.0, 0.0);
    return w;
  }
  return pole_shift_binomial(q, cplx(double(center), 0.0), terms + 1);
}

double global_sign(const KernelSpec& spec) {
  return spec.sign == KernelSign::DerivativeProduct ? neg1pow(spec.depth())
                                                    : 1.0;
}

}  // namespace

int KernelSpec::weight() const {
  int w = q;
  for (int pj : p) w += pj;
  return w;
}

void validate_kernel(const KernelSpec& spec) {
  if (spec.p.empty()) throw domain_error("kernel: at least one factor required");
  if (spec.p.size() != spec.args.size())
    throw domain_error("kernel: orders and arguments differ in length");
  if (spec.p.size() > 16) throw domain_error("kernel: depth exceeds 16");
  if (spec.q < 1) throw domain_error("kernel: central pole order must be >= 1");
  for (size_t j = 0; j < spec.p.size(); ++j) {
    if (spec.p[j] < 1)
      throw domain_error("kernel: factor orders must be >= 1");
    if (spec.p[j] == 1 && spec.args[j].is_one())
      throw domain_error(
          "kernel: factor with (p_j, x_j) = (1, 1) has no finite expansion");
  }
  if (spec.variant == KernelVariant::F && !spec.phi_arg.is_exact())
    throw domain_error(
        "kernel: the simple-pole argument must be an exact root of unity");
}

cplx phi_comb(int m, const UnitParam& x, const EvalConfig& cfg) {
  if (m < 0) throw domain_error("phi_comb: order must be >= 0");
  if (!x.on_circle())
    throw domain_error("phi_comb: argument must lie on the unit circle");
  if (m == 0 && x.is_one()) return cplx(0.0, 0.0);
  const EvalConfig ecfg = engine_config(cfg);
  const cplx a = polylog(m + 1, x, ecfg).value;
  const cplx b = polylog(m + 1, x.inverse(), ecfg).value;
  return neg1pow(m) * a - b;
}

LaurentSeries phi_expansion_neg(int p, const UnitParam& x, long long n,
                                int analytic_terms, const EvalConfig& cfg) {
  if (p < 1) throw domain_error("phi_expansion_neg: order must be >= 1");
  if (n < 0) throw domain_error("phi_expansion_neg: center index must be >= 0");
  if (analytic_terms < 0)
    throw domain_error("phi_expansion_neg: analytic_terms must be >= 0");
  if (p == 1 && x.is_one())
    throw domain_error(
        "phi_expansion_neg: (p, x) = (1, 1) has no finite expansion");
  const EvalConfig ecfg = engine_config(cfg);
  const int W = analytic_terms;

  // v[k] = x^n zeta_n(p + k; 1/x), by the stable forward recursion
  // v <- x * v + n^{-l}; bounded for every |x| <= 1 where the raw
  // inverse-argument prefix overflows.
  std::vector<cplx> v(size_t(W) + 1, cplx(0.0, 0.0));
  const cplx xv = x.value();
  for (long long m = 1; m <= n; ++m)
    for (int k = 0; k <= W; ++k)
      v[size_t(k)] = xv * v[size_t(k)] + 1.0 / ipow(m, p + k);
  const cplx xn = x.pow(n);

  LaurentSeries w;
  w.center = cplx(double(-n), 0.0);
  w.min_order = -p;
  w.trunc_order = W;
  w.coeffs.assign(size_t(W + p + 1), cplx(0.0, 0.0));
  w.coeffs[0] = xn;
  for (int k = 0; k <= W; ++k) {
    const cplx li = polylog(p + k, x, ecfg).value;
    w.coeffs[size_t(p + k)] =
        binom(k + p - 1, p - 1) * (neg1pow(k) * xn * li + neg1pow(p) * v[size_t(k)]);
  }
  return w;
}

LaurentSeries phi_expansion_pos(int p, const UnitParam& x, long long n,
                                int analytic_terms, const EvalConfig& cfg) {
  if (p < 1) throw domain_error("phi_expansion_pos: order must be >= 1");
  if (n < 1) throw domain_error("phi_expansion_pos: center index must be >= 1");
  if (analytic_terms < 0)
    throw domain_error("phi_expansion_pos: analytic_terms must be >= 0");
  if (p == 1 && x.is_one())
    throw domain_error(
        "phi_expansion_pos: (p, x) = (1, 1) has no finite expansion");
  const EvalConfig ecfg = engine_config(cfg);
  const int W = analytic_terms;

  // tau[k] = x^{-n} (Li_{p+k}(x) - zeta_{n-1}(p+k; x)).
  std::vector<cplx> tau(size_t(W) + 1);
  if (x.on_circle()) {
    // Unit modulus: the literal difference with exact root powers is stable.
    const cplx xinvn = x.pow(-n);
    for (int k = 0; k <= W; ++k)
      tau[size_t(k)] = xinvn * (polylog(p + k, x, ecfg).value -
                                finite_polylog_sum(n - 1, p + k, x));
  } else {
    // Interior argument: the difference cancels catastrophically against
    // the exploding x^{-n}; sum the geometric tail directly instead.
    const cplx xv = x.value();
    for (int k = 0; k <= W; ++k) {
      ckbn_accumulator acc;
      cplx pw(1.0, 0.0);
      for (long long j = 0;; ++j) {
        const double scale = 1.0 / ipow(n + j, p + k);
        acc.add(pw * scale);
        pw *= xv;
        if (std::abs(pw) * scale < 1e-18 * (std::abs(acc.value()) + 1e-300) &&
            j > 4)
          break;
        if (j > 100000)
          throw convergence_error("phi_expansion_pos: tail did not converge",
                                  acc.value(), std::abs(pw) * scale);
      }
      tau[size_t(k)] = acc.value();
    }
  }

  LaurentSeries w;
  w.center = cplx(double(n), 0.0);
  w.min_order = 0;
  w.trunc_order = W;
  w.coeffs.assign(size_t(W) + 1, cplx(0.0, 0.0));
  for (int k = 0; k <= W; ++k)
    w.coeffs[size_t(k)] = binom(k + p - 1, p - 1) * neg1pow(k) * tau[size_t(k)];
  return w;
}

LaurentSeries big_phi_expansion(const UnitParam& x, long long center,
                                int analytic_terms, const EvalConfig& cfg) {
  if (!x.on_circle())
    throw domain_error("big_phi_expansion: argument must lie on the unit circle");
  if (analytic_terms < 0)
    throw domain_error("big_phi_expansion: analytic_terms must be >= 0");
  const int W = analytic_terms;
  const cplx pre = x.pow(-center);
  LaurentSeries w;
  w.center = cplx(double(center), 0.0);
  w.min_order = -1;
  w.trunc_order = W;
  w.coeffs.assign(size_t(W) + 2, cplx(0.0, 0.0));
  w.coeffs[0] = pre;
  for (int m = 0; m <= W; ++m)
    w.coeffs[size_t(m + 1)] = pre * phi_comb(m, x, cfg);
  return w;
}

// ---------------------------------------------------------------------------
// Incremental workspace
// ---------------------------------------------------------------------------

struct KernelWorkspace::Impl {
  KernelSpec spec;
  EvalConfig ecfg;
  int W = 0;
  long long n = 0;
  double sign = 1.0;

  struct Factor {
    int p = 1;
    UnitParam x;
    bool interior = false;
    cplx xval{};
    std::vector<cplx> li;                  // Li_{p+k}(x), k = 0..W
    std::vector<cplx> v;                   // x^n zeta_n(p+k; 1/x)
    std::vector<ckbn_accumulator> prefix;  // zeta_{n-1}(p+k; x)   (F only)
    detail::PowerStepper xstep;            // emits x^m
    cplx xn{1.0, 0.0};                     // x^n
    Factor(const UnitParam& arg, int order, int W, const EvalConfig& ecfg,
           bool need_prefix)
        : p(order), x(arg), xstep(arg) {
      interior = !arg.on_circle();
      xval = arg.value();
      li.resize(size_t(W) + 1);
      for (int k = 0; k <= W; ++k) li[size_t(k)] = polylog(p + k, arg, ecfg).value;
      v.assign(size_t(W) + 1, cplx(0.0, 0.0));
      if (need_prefix) prefix.resize(size_t(W) + 1);
    }
  };
  std::vector<Factor> factors;

  // Simple-pole factor data (variant F).
  std::vector<cplx> phic;  // phi_comb(m, phi_arg), m = 0..W

  bool have_zero = false;
  cplx zero_res{};

  Impl(const KernelSpec& s, const EvalConfig& cfg)
      : spec(s), ecfg(engine_config(cfg)) {
    validate_kernel(spec);
    W = window_terms(spec);
    sign = global_sign(spec);
    const bool need_prefix = spec.variant == KernelVariant::F;
    factors.reserve(spec.p.size());
    for (size_t j = 0; j < spec.p.size(); ++j)
      factors.emplace_back(spec.args[j], spec.p[j], W, ecfg, need_prefix);
    if (spec.variant == KernelVariant::F) {
      phic.resize(size_t(W) + 1);
      for (int m = 0; m <= W; ++m) phic[size_t(m)] = phi_comb(m, spec.phi_arg, ecfg);
    }
  }

  LaurentSeries phi_window(long long center) const {
    const cplx pre = spec.phi_arg.pow(-center);
    LaurentSeries w;
    w.center = cplx(double(center), 0.0);
    w.min_order = -1;
    w.trunc_order = W;
    w.coeffs.assign(size_t(W) + 2, cplx(0.0, 0.0));
    w.coeffs[0] = pre;
    for (int m = 0; m <= W; ++m) w.coeffs[size_t(m + 1)] = pre * phic[size_t(m)];
    return w;
  }

  LaurentSeries factor_window_neg(const Factor& f, long long center_n) const {
    LaurentSeries w;
    w.center = cplx(double(-center_n), 0.0);
    w.min_order = -f.p;
    w.trunc_order = W;
    w.coeffs.assign(size_t(W + f.p + 1), cplx(0.0, 0.0));
    w.coeffs[0] = f.xn;
    for (int k = 0; k <= W; ++k)
      w.coeffs[size_t(f.p + k)] =
          binom(k + f.p - 1, f.p - 1) *
          (neg1pow(k) * f.xn * f.li[size_t(k)] + neg1pow(f.p) * f.v[size_t(k)]);
    return w;
  }

  LaurentSeries factor_window_pos(const Factor& f, long long center_n) const {
    LaurentSeries w;
    w.center = cplx(double(center_n), 0.0);
    w.min_order = 0;
    w.trunc_order = W;
    w.coeffs.assign(size_t(W) + 1, cplx(0.0, 0.0));
    if (!f.interior) {
      const cplx xinvn = f.x.pow(-center_n);
      for (int k = 0; k <= W; ++k)
        w.coeffs[size_t(k)] =
            binom(k + f.p - 1, f.p - 1) * neg1pow(k) * xinvn *
            (f.li[size_t(k)] - f.prefix[size_t(k)].value());
    } else {
      for (int k = 0; k <= W; ++k) {
        ckbn_accumulator acc;
        cplx pw(1.0, 0.0);
        for (long long j = 0;; ++j) {
          const double scale = 1.0 / ipow(center_n + j, f.p + k);
          acc.add(pw * scale);
          pw *= f.xval;
          if (std::abs(pw) * scale <
                  1e-18 * (std::abs(acc.value()) + 1e-300) &&
              j > 4)
            break;
        }
        w.coeffs[size_t(k)] =
            binom(k + f.p - 1, f.p - 1) * neg1pow(k) * acc.value();
      }
    }
    return w;
  }

  cplx finish(LaurentSeries win) const {
    if (win.trunc_order < -1)
      throw internal_error("kernel window lost the -1 order");
    return sign * ls_residue(win);
  }

  cplx residue_zero_impl() {
    if (have_zero) return zero_res;
    LaurentSeries win = central_pole_window(spec.q, 0, W);
    for (const Factor& f : factors) {
      // n = 0 window: prefix sums vanish, the principal coefficient is 1.
      LaurentSeries fw;
      fw.center = cplx(0.0, 0.0);
      fw.min_order = -f.p;
      fw.trunc_order = W;
      fw.coeffs.assign(size_t(W + f.p + 1), cplx(0.0, 0.0));
      fw.coeffs[0] = cplx(1.0, 0.0);
      for (int k = 0; k <= W; ++k)
        fw.coeffs[size_t(f.p + k)] =
            binom(k + f.p - 1, f.p - 1) * neg1pow(k) * f.li[size_t(k)];
      win = ls_mul(win, fw);
    }
    if (spec.variant == KernelVariant::F) win = ls_mul(win, phi_window(0));
    zero_res = finish(std::move(win));
    have_zero = true;
    return zero_res;
  }

  void step() {
    // Fold the outgoing x^n term into the prefix sums (zeta_{n-1} for the
    // next index), then advance the power and scaled-prefix states.
    for (Factor& f : factors) {
      if (!f.prefix.empty() && n >= 1)
        for (int k = 0; k <= W; ++k)
          f.prefix[size_t(k)].add(f.xn / ipow(n, f.p + k));
      f.xn = f.xstep.next();
    }
    ++n;
    for (Factor& f : factors)
      for (int k = 0; k <= W; ++k)
        f.v[size_t(k)] = f.xval * f.v[size_t(k)] + 1.0 / ipow(n, f.p + k);
  }

  cplx residue_neg_impl() {
    if (n < 1) throw domain_error("kernel workspace: advance before residue_neg");
    LaurentSeries win = central_pole_window(spec.q, -n, W);
    for (const Factor& f : factors) win = ls_mul(win, factor_window_neg(f, n));
    if (spec.variant == KernelVariant::F) win = ls_mul(win, phi_window(-n));
    return finish(std::move(win));
  }

  cplx residue_pos_impl() {
    if (n < 1) throw domain_error("kernel workspace: advance before residue_pos");
    if (spec.variant == KernelVariant::G) return cplx(0.0, 0.0);
    LaurentSeries win = central_pole_window(spec.q, n, W);
    for (const Factor& f : factors) win = ls_mul(win, factor_window_pos(f, n));
    win = ls_mul(win, phi_window(n));
    return finish(std::move(win));
  }
};

KernelWorkspace::KernelWorkspace(const KernelSpec& spec, const EvalConfig& cfg)
    : impl_(new Impl(spec, cfg)) {}

KernelWorkspace::~KernelWorkspace() { delete impl_; }

const KernelSpec& KernelWorkspace::spec() const { return impl_->spec; }

void KernelWorkspace::advance_to(long long n) {
  if (n < impl_->n)
    throw domain_error("kernel workspace: scan position cannot decrease");
  while (impl_->n < n) impl_->step();
}

long long KernelWorkspace::position() const { return impl_->n; }

cplx KernelWorkspace::residue_zero() { return impl_->residue_zero_impl(); }
cplx KernelWorkspace::residue_neg() { return impl_->residue_neg_impl(); }
cplx KernelWorkspace::residue_pos() { return impl_->residue_pos_impl(); }

cplx kernel_residue(const KernelSpec& spec, long long pole,
                    const EvalConfig& cfg) {
  KernelWorkspace ws(spec, cfg);
  if (pole == 0) return ws.residue_zero();
  ws.advance_to(pole > 0 ? pole : -pole);
  return pole > 0 ? ws.residue_pos() : ws.residue_neg();
}

ResidueReport residue_total(const KernelSpec& spec, long long n_max,
                            const EvalConfig& cfg) {
  validate_kernel(spec);
  ResidueReport rep;
  rep.fold = fold_period(spec);
  const long long block = 4 * rep.fold;
  rep.n_max = (n_max / block) * block;
  if (rep.n_max < block)
    throw domain_error("residue_total: n_max too small for the fold period");
  rep.target_tol = all_on_circle(spec) ? cfg.boundary_target_tol : cfg.target_tol;

  KernelWorkspace ws(spec, cfg);
  const std::array<long long, 3> cps = {rep.n_max / 4, rep.n_max / 2, rep.n_max};
  std::array<cplx, 3> totals{};
  ckbn_accumulator acc;
  const cplx r0 = ws.residue_zero();
  acc.add(r0);
  rep.per_pole.emplace_back(0, r0);
  size_t cp = 0;
  for (long long m = 1; m <= rep.n_max; ++m) {
    ws.advance_to(m);
    const cplx rn = ws.residue_neg();
    acc.add(rn);
    if (m <= 4) rep.per_pole.emplace_back(-m, rn);
    if (spec.variant == KernelVariant::F) {
      const cplx rp = ws.residue_pos();
      acc.add(rp);
      if (m <= 4) rep.per_pole.emplace_back(m, rp);
    }
    if (cp < 3 && m == cps[cp]) totals[cp++] = acc.value();
  }
  stats::add_terms(rep.n_max);
  rep.raw_total = acc.value();
  rep.extrapolated = richardson3(cps, totals, std::max(spec.q - 1, 1));
  rep.pass = std::abs(rep.extrapolated) <= 10.0 * rep.target_tol;
  std::sort(rep.per_pole.begin(), rep.per_pole.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return rep;
}

ParityReport parity_decompose(const KernelSpec& spec, long long n_max,
                              const EvalConfig& cfg) {
  validate_kernel(spec);
  if (spec.variant != KernelVariant::F)
    throw domain_error("parity_decompose: requires the simple-pole kernel");
  for (const UnitParam& a : spec.args)
    if (!a.is_exact())
      throw domain_error("parity_decompose: exact root arguments required");

  ParityReport rep;
  rep.fold = fold_period(spec);
  const long long block = 4 * rep.fold;
  rep.n_max = (n_max / block) * block;
  if (rep.n_max < block)
    throw domain_error("parity_decompose: n_max too small for the fold period");

  const int r = spec.depth();
  int sum_p = 0;
  for (int pj : spec.p) sum_p += pj;
  const double sg_forward = neg1pow(r) * global_sign(spec);
  const double sg_mirror = neg1pow(sum_p + spec.q) * global_sign(spec);

  // Common root of the two series' outer powers: w = x * x_1 ... x_r.
  std::vector<UnitParam> all = spec.args;
  all.push_back(spec.phi_arg);
  const UnitParam w = param_product(all);

  KernelWorkspace ws(spec, cfg);
  std::vector<ZetaHistory> fwd, mir;
  fwd.reserve(spec.p.size());
  mir.reserve(spec.p.size());
  for (size_t j = 0; j < spec.p.size(); ++j) {
    fwd.emplace_back(spec.p[j], spec.args[j]);
    mir.emplace_back(spec.p[j], spec.args[j].inverse());
  }

  const std::array<long long, 3> cps = {rep.n_max / 4, rep.n_max / 2, rep.n_max};
  std::array<cplx, 3> Fs{}, Ms{}, Ts{};
  ckbn_accumulator accF, accM, accT;
  accT.add(ws.residue_zero());
  size_t cp = 0;
  for (long long m = 1; m <= rep.n_max; ++m) {
    ws.advance_to(m);
    accT.add(ws.residue_neg());
    accT.add(ws.residue_pos());
    cplx pf(1.0, 0.0), pm(1.0, 0.0);
    for (size_t j = 0; j < spec.p.size(); ++j) {
      pf *= fwd[j].upto(m - 1);
      pm *= mir[j].upto(m);
    }
    const double nq = ipow(m, spec.q);
    accF.add(sg_forward * pf * w.pow(-m) / nq);
    accM.add(sg_mirror * pm * w.pow(m) / nq);
    if (cp < 3 && m == cps[cp]) {
      Fs[cp] = accF.value();
      Ms[cp] = accM.value();
      Ts[cp] = accT.value();
      ++cp;
    }
  }
  stats::add_terms(rep.n_max);
  const int e1 = std::max(spec.q - 1, 1);
  rep.forward = richardson3(cps, Fs, e1);
  rep.mirror = richardson3(cps, Ms, e1);
  rep.total = richardson3(cps, Ts, e1);
  std::array<cplx, 3> Rs{};
  for (size_t i = 0; i < 3; ++i) Rs[i] = Ts[i] - Fs[i] - Ms[i];
  rep.remainder = richardson3(cps, Rs, e1);
  return rep;
}

}  // namespace esum
