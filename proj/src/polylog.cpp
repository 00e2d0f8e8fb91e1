#include "esum/polylog.hpp"

#include <algorithm>
#include <limits>

#include "esum/accel.hpp"
#include "esum/cache.hpp"
#include "esum/hurwitz.hpp"

namespace esum {

namespace {

/// Rounding-noise floor for a finished value.
double err_floor(cplx v) {
  return 8.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(v));
}

/// Power table e^{2 pi i j a / N}, j = 0..N-1, from exact angle arithmetic.
std::vector<cplx> root_power_table(const RootOfUnity& r) {
  std::vector<cplx> tbl(size_t(r.order));
  for (long long j = 0; j < r.order; ++j) tbl[size_t(j)] = r.pow(j);
  return tbl;
}

ValueWithError polylog_interior(int p, cplx z, double tol, long long max_terms) {
  const double az = std::abs(z);
  kbn_accumulator re, im;
  cplx zp{1.0, 0.0};
  long long k = 0;
  double bound = std::numeric_limits<double>::infinity();
  while (k < max_terms) {
    ++k;
    zp = ((k & 4095) == 0) ? cpow_u(z, k) : zp * z;
    const cplx term = zp / ipow(k, p);
    re.add(term.real());
    im.add(term.imag());
    bound = std::pow(az, double(k + 1)) / ((1.0 - az) * ipow(k + 1, p));
    if (bound <= tol * 0.5) break;
  }
  stats::add_terms(k);
  ValueWithError out;
  out.value = {re.value(), im.value()};
  out.terms_used = k;
  out.abs_err = bound + err_floor(out.value);
  if (!(bound <= tol * 0.5))
    throw convergence_error("polylog: tolerance unreachable within max_terms",
                            out.value, out.abs_err);
  return out;
}

/// |x| = 1, x not an exact root and not 1: accelerated partial sums in
/// geometrically growing stages, 32 checkpoints per stage. A stage estimate
/// is only trusted once the NEXT stage (4x the terms) reproduces it: local
/// transform fluctuation alone is a known under-estimator of the true
/// extrapolation error.
ValueWithError polylog_circle_accel(int p, cplx z, double tol,
                                    const EvalConfig& cfg) {
  constexpr int kSamples = 32;
  kbn_accumulator re, im;
  cplx zp{1.0, 0.0};
  long long k = 0;
  cplx best{}, prev_stage{};
  bool have_prev = false;
  double best_err = std::numeric_limits<double>::infinity();

  long long h = 256;  // per-checkpoint block length for the first stage
  while (k < cfg.max_terms) {
    std::vector<cplx> samples;
    samples.reserve(kSamples);
    for (int b = 0; b < kSamples && k < cfg.max_terms; ++b) {
      for (long long i = 0; i < h && k < cfg.max_terms; ++i) {
        ++k;
        zp = ((k & 4095) == 0) ? cpow_u(z, k) : zp * z;
        const cplx term = zp / ipow(k, p);
        re.add(term.real());
        im.add(term.imag());
      }
      samples.push_back(cplx{re.value(), im.value()});
    }
    if (cfg.accel_mode == AccelMode::None) {
      // direct summation; absolute tail bound sum_{j>k} j^{-p} is rigorous
      const double bound = std::pow(double(k), 1.0 - double(p)) / double(p - 1);
      best = {re.value(), im.value()};
      best_err = bound + err_floor(best);
    } else {
      const AccelResult a = (cfg.accel_mode == AccelMode::LevinU)
                                ? levin_u(samples)
                                : aitken_iterated(samples);
      if (have_prev) {
        const double combined = std::max(a.err, std::abs(a.value - prev_stage));
        if (combined < best_err) {
          best = a.value;
          best_err = combined;
        }
      }
      prev_stage = a.value;
      have_prev = true;
    }
    if (best_err <= tol) break;
    h *= 4;
  }
  stats::add_terms(k);
  ValueWithError out;
  out.value = best;
  out.abs_err = std::max({best_err, 1e-3 * tol, err_floor(best)});
  out.terms_used = k;
  out.accelerated = cfg.accel_mode != AccelMode::None;
  if (!(best_err <= tol))
    throw convergence_error("polylog: boundary tolerance unreachable within max_terms",
                            out.value, out.abs_err);
  return out;
}

}  // namespace

cplx finite_polylog_sum(long long n, int p, const UnitParam& x) {
  if (n < 0) throw domain_error("finite_polylog_sum: n must be >= 0");
  if (p < 1) throw domain_error("finite_polylog_sum: weight p must be >= 1");
  kbn_accumulator re, im;
  if (x.is_exact()) {
    const std::vector<cplx> tbl = root_power_table(x.root());
    const long long N = x.root().order;
    for (long long k = 1; k <= n; ++k) {
      const cplx term = tbl[size_t(k % N)] / ipow(k, p);
      re.add(term.real());
      im.add(term.imag());
    }
  } else {
    const cplx z = x.value();
    cplx zp{1.0, 0.0};
    for (long long k = 1; k <= n; ++k) {
      zp = ((k & 4095) == 0) ? cpow_u(z, k) : zp * z;
      const cplx term = zp / ipow(k, p);
      re.add(term.real());
      im.add(term.imag());
    }
  }
  stats::add_terms(n);
  return {re.value(), im.value()};
}

ValueWithError polylog(int p, const UnitParam& x, const EvalConfig& cfg) {
  cfg.validate();
  if (p < 1) throw domain_error("polylog: weight p must be a positive integer");
  if (p == 1 && x.is_one())
    throw domain_error("polylog: divergent at (p, x) = (1, 1)");

  const bool circle_float = !x.is_exact() && x.on_circle();
  const double need_tol = circle_float ? cfg.boundary_target_tol : cfg.target_tol;
  const std::string key = PolylogKey{p, x}.canonical();
  if (auto hit = memo::lookup(key, need_tol)) return *hit;

  ValueWithError out;
  if (p == 1) {
    out.value = -std::log(cplx{1.0, 0.0} - x.value());
    out.abs_err = err_floor(out.value);
  } else if (x.is_exact()) {
    const RootOfUnity r = x.root();
    if (r.is_one()) {
      out.value = zeta_int(p);
      out.abs_err = err_floor(out.value);
    } else {
      const long long N = r.order;
      const double h_tol = std::min(cfg.target_tol, 1e-13);
      kbn_accumulator re, im;
      for (long long j = 1; j <= N; ++j) {
        const cplx w = r.pow(j) * hurwitz_zeta(p, double(j) / double(N), h_tol,
                                               cfg.hurwitz_em_terms);
        re.add(w.real());
        im.add(w.imag());
      }
      const double scale = std::pow(double(N), -double(p));
      out.value = cplx{re.value(), im.value()} * scale;
      out.abs_err = std::max(h_tol * std::pow(double(N), 1.0 - double(p)),
                             err_floor(out.value));
    }
  } else if (!x.on_circle()) {
    out = polylog_interior(p, x.value(), need_tol, cfg.max_terms);
  } else {
    out = polylog_circle_accel(p, x.value(), need_tol, cfg);
  }
  memo::store(key, out);
  return out;
}

std::map<std::string, ValueWithError> polylog_batch(
    std::span<const PolylogKey> keys, const EvalConfig& cfg,
    std::map<std::string, std::string>* errors) {
  std::map<std::string, ValueWithError> out;
  for (const PolylogKey& key : keys) {
    const std::string ck = key.canonical();
    if (out.count(ck)) continue;
    try {
      out.emplace(ck, polylog(key.p, key.x, cfg));
    } catch (const convergence_error& e) {
      if (errors) (*errors)[ck] = e.what();
    } catch (const domain_error& e) {
      if (errors) (*errors)[ck] = e.what();
    }
  }
  return out;
}

ZetaHistory::ZetaHistory(int p, const UnitParam& x) : p_(p), x_(x) {
  if (p < 1) throw domain_error("ZetaHistory: weight p must be >= 1");
  if (x.is_exact())
    roots_ = root_power_table(x.root());
  else
    z_ = x.value();
  sums_.push_back(cplx{});  // zeta_0 = 0
}

cplx ZetaHistory::upto(long long n) {
  if (n < 0) throw domain_error("ZetaHistory: n must be >= 0");
  while (static_cast<long long>(sums_.size()) <= n) {
    const long long k = static_cast<long long>(sums_.size());
    cplx pw;
    if (!roots_.empty()) {
      pw = roots_[size_t(k % static_cast<long long>(roots_.size()))];
    } else {
      zpow_ = ((k & 4095) == 0) ? cpow_u(z_, k) : zpow_ * z_;
      pw = zpow_;
    }
    acc_.add(pw / ipow(k, p_));
    sums_.push_back(acc_.value());
    stats::add_terms(1);
  }
  return sums_[size_t(n)];
}

}  // namespace esum
