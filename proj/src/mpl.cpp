#include "esum/mpl.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

#include "esum/accel.hpp"
#include "esum/cache.hpp"

namespace esum {

namespace {

double err_floor(cplx v) {
  return 8.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(v));
}

/// Strict-interior band: cumulative products this close to the circle are
/// treated as boundary, matching the root-of-unity tolerance scale.
constexpr double kInteriorBand = 1e-9;

struct Convergence {
  bool interior;  // every suffix product strictly inside the disk
  double rho;     // largest suffix-product modulus
};

Convergence classify(const MplSpec& spec) {
  double rho = 0.0, prod = 1.0;
  for (int j = spec.depth() - 1; j >= 0; --j) {
    prod *= std::abs(spec.x[size_t(j)].value());
    rho = std::max(rho, prod);
  }
  return {rho < 1.0 - kInteriorBand, rho};
}

/// Shared DP state: ascending single pass, prefix accumulators updated in
/// descending depth order so A[j-1] is still at n-1 when A[j] consumes it.
struct MplPass {
  explicit MplPass(const MplSpec& spec) : spec_(spec), A_(spec.k.size()) {
    for (const UnitParam& p : spec.x) pw_.emplace_back(p);
  }

  /// Advances one index; returns the magnitude of the outermost increment.
  double step() {
    ++n_;
    const int r = int(spec_.k.size());
    for (int j = 0; j < r; ++j) xn_[size_t(j)] = pw_[size_t(j)].next();
    double outer_mag = 0.0;
    for (int j = r - 1; j >= 0; --j) {
      const cplx inner = (j == 0) ? cplx{1.0, 0.0} : A_[size_t(j - 1)].value();
      const cplx d = xn_[size_t(j)] / ipow(n_, spec_.k[size_t(j)]) * inner;
      A_[size_t(j)].add(d);
      if (j == r - 1) outer_mag = std::abs(d);
    }
    return outer_mag;
  }

  cplx total() const { return A_.back().value(); }
  long long n() const { return n_; }

  const MplSpec& spec_;
  std::vector<ckbn_accumulator> A_;
  std::vector<detail::PowerStepper> pw_;
  cplx xn_[64] = {};
  long long n_ = 0;
};

ValueWithError mpl_interior(const MplSpec& spec, const Convergence& conv,
                            double tol, const EvalConfig& cfg) {
  MplPass pass(spec);
  const double gfac = conv.rho / (1.0 - conv.rho);
  const int r = spec.depth();
  double recent[4] = {};
  double bound = std::numeric_limits<double>::infinity();
  int streak = 0;
  while (pass.n() < cfg.max_terms) {
    const double mag = pass.step();
    recent[pass.n() & 3] = mag;
    bound = 2.0 * gfac * std::max({recent[0], recent[1], recent[2], recent[3]});
    if (pass.n() > 16 + r && bound < tol * 0.5) {
      if (++streak >= 4) break;
    } else {
      streak = 0;
    }
  }
  stats::add_terms(pass.n() * r);
  ValueWithError out;
  out.value = pass.total();
  out.terms_used = pass.n();
  out.abs_err = bound + err_floor(out.value);
  if (streak < 4)
    throw convergence_error("mpl: tolerance unreachable within max_terms",
                            out.value, out.abs_err);
  return out;
}

ValueWithError mpl_boundary(const MplSpec& spec, double tol,
                            const EvalConfig& cfg) {
  const int r = spec.depth();
  long long M = 1;
  for (const UnitParam& p : spec.x) M = std::lcm(M, p.order());
  int nlog = 0;  // inner (1, 1) pairs force logarithmic prefix growth
  for (int j = 0; j < r; ++j)
    if (spec.k[size_t(j)] == 1 && spec.x[size_t(j)].is_one()) ++nlog;

  MplPass pass(spec);
  cplx best{}, prev_stage{};
  bool have_prev = false;
  double best_err = std::numeric_limits<double>::infinity();
  long long stage_len = std::max<long long>(64 * M, 4096);
  while (pass.n() < cfg.max_terms && !(best_err <= tol)) {
    const long long step = std::max(M, (stage_len / 32 / M) * M);
    std::vector<cplx> samples;
    std::vector<long long> Ns;
    samples.reserve(32);
    for (int b = 0; b < 32 && pass.n() + step <= cfg.max_terms; ++b) {
      const long long target = pass.n() + step;
      while (pass.n() < target) pass.step();
      samples.push_back(pass.total());
      Ns.push_back(pass.n());
    }
    if (samples.empty()) break;  // budget cannot fit another checkpoint
    if (samples.size() >= 8) {
      if (cfg.accel_mode == AccelMode::None) {
        best = samples.back();
        best_err = std::abs(samples.back() - samples[samples.size() / 2]);
      } else {
        // Checkpoints at multiples of the order LCM grow as a polynomial in
        // 1/N (with ln N factors for each unit pair), so the structured
        // least-squares model beats sequence transforms here: the folded
        // sequence converges with ratio -> 1, where Aitken/Levin stall.
        // A stage is accepted only once the next stage reproduces it.
        const AccelResult a = smooth_model_fit(samples, Ns, nlog, 4);
        if (have_prev) {
          const double combined =
              std::max(a.err, std::abs(a.value - prev_stage));
          if (combined < best_err) {
            best = a.value;
            best_err = combined;
          }
        }
        prev_stage = a.value;
        have_prev = true;
      }
    }
    stage_len *= 4;
  }
  stats::add_terms(pass.n() * r);
  ValueWithError out;
  out.value = best;
  out.terms_used = pass.n();
  out.abs_err = std::max({best_err, (cfg.accel_mode == AccelMode::None)
                                        ? 0.0
                                        : 1e-3 * tol,
                          err_floor(best)});
  out.accelerated = cfg.accel_mode != AccelMode::None;
  if (!(best_err <= tol))
    throw convergence_error("mpl: boundary tolerance unreachable within max_terms",
                            out.value, out.abs_err);
  return out;
}

void check_shape(const MplSpec& spec) {
  if (spec.k.empty()) throw domain_error("mpl: depth must be >= 1");
  if (spec.k.size() != spec.x.size())
    throw domain_error("mpl: exponent and argument lists differ in length");
  if (spec.k.size() > 64) throw domain_error("mpl: depth too large");
  for (int v : spec.k)
    if (v < 1) throw domain_error("mpl: exponents must be positive integers");
}

}  // namespace

std::string MplSpec::canonical() const {
  std::string out = "mpl|";
  for (size_t j = 0; j < k.size(); ++j) {
    if (j) out += ',';
    out += std::to_string(k[j]);
  }
  out += '|';
  for (size_t j = 0; j < x.size(); ++j) {
    if (j) out += ';';
    out += x[j].serialize();
  }
  return out;
}

void validate_mpl(const MplSpec& spec) {
  check_shape(spec);
  const Convergence conv = classify(spec);
  if (conv.interior) return;
  bool all_roots = true;
  for (const UnitParam& p : spec.x) all_roots = all_roots && p.is_exact();
  if (!all_roots)
    throw domain_error(
        "mpl: boundary arguments must all be exact roots of unity (mixed "
        "cases failing the cumulative-product condition are rejected)");
  const size_t last = spec.k.size() - 1;
  if (spec.k[last] == 1 && spec.x[last].is_one())
    throw domain_error("mpl: divergent — last index pair (k_r, x_r) = (1, 1)");
}

ValueWithError mpl_eval(const MplSpec& spec, const EvalConfig& cfg) {
  cfg.validate();
  validate_mpl(spec);
  const Convergence conv = classify(spec);
  const double tol = conv.interior ? cfg.target_tol : cfg.boundary_target_tol;
  const std::string key = spec.canonical();
  if (auto hit = memo::lookup(key, tol)) return *hit;
  ValueWithError out = conv.interior ? mpl_interior(spec, conv, tol, cfg)
                                     : mpl_boundary(spec, tol, cfg);
  memo::store(key, out);
  return out;
}

cplx brute_force_mpl(const MplSpec& spec, long long N) {
  check_shape(spec);
  if (N < 0) throw domain_error("brute_force_mpl: N must be >= 0");
  const int r = spec.depth();
  std::vector<std::vector<cplx>> t;
  t.resize(size_t(r));
  for (int j = 0; j < r; ++j) {
    t[size_t(j)].assign(size_t(N + 1), cplx{});
    detail::PowerStepper ps(spec.x[size_t(j)]);
    for (long long m = 1; m <= N; ++m)
      t[size_t(j)][size_t(m)] = ps.next() / ipow(m, spec.k[size_t(j)]);
  }
  long long work = 0;
  std::function<cplx(int, long long)> chain = [&](int depth,
                                                  long long hi) -> cplx {
    kbn_accumulator re, im;
    if (depth == 1) {
      for (long long m = 1; m <= hi; ++m) {
        re.add(t[0][size_t(m)].real());
        im.add(t[0][size_t(m)].imag());
        ++work;
      }
    } else if (depth == 2) {
      ckbn_accumulator prefix;
      for (long long m = 2; m <= hi; ++m) {
        prefix.add(t[0][size_t(m - 1)]);
        const cplx d = t[1][size_t(m)] * prefix.value();
        re.add(d.real());
        im.add(d.imag());
        ++work;
      }
    } else {
      for (long long m = depth; m <= hi; ++m) {
        const cplx d = t[size_t(depth - 1)][size_t(m)] * chain(depth - 1, m - 1);
        re.add(d.real());
        im.add(d.imag());
        ++work;
      }
    }
    return {re.value(), im.value()};
  };
  const cplx out = chain(r, N);
  stats::add_terms(work);
  return out;
}

MplSpec parse_amzv(const std::string& text) {
  auto fail = [](const std::string& why) -> void {
    throw domain_error("parse_amzv: " + why);
  };
  auto trim = [](std::string s) {
    const char* ws = " \t";
    const size_t a = s.find_first_not_of(ws);
    if (a == std::string::npos) return std::string{};
    const size_t b = s.find_last_not_of(ws);
    return s.substr(a, b - a + 1);
  };

  MplSpec spec;
  size_t pos = 0;
  const std::string src = text;
  bool last_bar = false;
  while (true) {
    const size_t comma = src.find(',', pos);
    std::string tok = trim(src.substr(pos, comma == std::string::npos
                                               ? std::string::npos
                                               : comma - pos));
    if (tok.empty()) fail("empty index in '" + text + "'");
    bool bar = false;
    if (tok.rfind("bar", 0) == 0) {
      bar = true;
      tok = tok.substr(3);
    } else if (tok.back() == '-') {
      bar = true;
      tok.pop_back();
    }
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      fail("bad index '" + tok + "'");
    const long long v = std::stoll(tok);
    if (v < 1 || v > 1000) fail("index out of range: " + tok);
    spec.k.push_back(int(v));
    spec.x.push_back(bar ? UnitParam::exact(1, 2) : UnitParam{});
    last_bar = bar;
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (spec.k.back() == 1 && !last_bar)
    fail("divergent index list — trailing unbarred 1");
  return spec;
}

ValueWithError amzv_eval(const std::string& text, const EvalConfig& cfg) {
  return mpl_eval(parse_amzv(text), cfg);
}

ValueWithError eval_term_sum(std::span<const MplProductTerm> terms,
                             const EvalConfig& cfg) {
  ckbn_accumulator acc;
  double err = 0.0;
  long long used = 0;
  bool accel = false;
  for (const MplProductTerm& t : terms) {
    const ValueWithError m = mpl_eval(t.mpl, cfg);
    cplx v = m.value;
    double e = m.abs_err;
    used += m.terms_used;
    accel = accel || m.accelerated;
    if (t.prefactor) {
      const ValueWithError f = polylog(t.prefactor->p, t.prefactor->x, cfg);
      e = std::abs(f.value) * m.abs_err + std::abs(m.value) * f.abs_err +
          f.abs_err * m.abs_err;
      v = f.value * m.value;
      used += f.terms_used;
      accel = accel || f.accelerated;
    }
    acc.add(t.sign * v);
    err += e;
  }
  ValueWithError out;
  out.value = acc.value();
  out.abs_err = err + err_floor(out.value);
  out.terms_used = used;
  out.accelerated = accel;
  return out;
}

}  // namespace esum
