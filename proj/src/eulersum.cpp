#include "esum/eulersum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

#include "esum/accel.hpp"
#include "esum/cache.hpp"

namespace esum {

namespace {

double err_floor(cplx v) {
  return 8.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(v));
}

/// Same circle band as the other evaluators: moduli this close to 1 take
/// the boundary (accelerated) path.
constexpr double kCircleBand = 1e-9;

std::vector<size_t> canonical_order(const EulerSumSpec& spec) {
  std::vector<size_t> idx(spec.p.size());
  std::iota(idx.begin(), idx.end(), size_t(0));
  std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    if (spec.p[a] != spec.p[b]) return spec.p[a] < spec.p[b];
    return spec.x[a].serialize() < spec.x[b].serialize();
  });
  return idx;
}

/// Power emitter over a WideParam restricted to the closed disk: exact
/// roots read a drift-free table, floating values re-anchor periodically.
class WideStepper {
 public:
  explicit WideStepper(const detail::WideParam& w) {
    if (w.exact) {
      table_.resize(size_t(w.root.order));
      for (long long j = 0; j < w.root.order; ++j)
        table_[size_t(j)] = w.root.pow(j);
    } else {
      z_ = w.val;
    }
  }

  cplx next() {
    ++n_;
    if (!table_.empty()) return table_[size_t(n_ % (long long)table_.size())];
    zp_ = ((n_ & 4095) == 0) ? cpow_u(z_, n_) : zp_ * z_;
    return zp_;
  }

 private:
  std::vector<cplx> table_;
  cplx z_{};
  cplx zp_{1.0, 0.0};
  long long n_ = 0;
};

/// One ascending pass over the series: factor prefixes (compensated for
/// in-disk arguments, contraction recursion for rescaled ones) times the
/// effective rotation power over n^q.
struct SumPass {
  SumPass(const std::vector<int>& p, const std::vector<detail::WideParam>& args,
          int q, const detail::WideParam& rot, const std::vector<bool>& scaled)
      : p_(p), args_(args), q_(q), scaled_(scaled), rot_(rot) {
    const size_t r = p.size();
    u_scaled_.assign(r, cplx{});
    u_acc_.assign(r, ckbn_accumulator{});
    for (size_t j = 0; j < r; ++j)
      if (!scaled[j]) steppers_.emplace_back(args[j]);
      else steppers_.emplace_back(detail::WideParam::approx(cplx{0.0, 0.0}));
    if (rot.exact) {
      rot_table_.resize(size_t(rot.root.order));
      for (long long j = 0; j < rot.root.order; ++j)
        rot_table_[size_t(j)] = rot.root.pow(j);
    }
  }

  /// Advances one index; returns the magnitude of the appended term.
  double step() {
    ++n_;
    cplx rp;
    if (!rot_table_.empty()) {
      rp = rot_table_[size_t(n_ % (long long)rot_table_.size())];
    } else {
      rotp_ = ((n_ & 4095) == 0) ? cpow_u(rot_.val, n_) : rotp_ * rot_.val;
      rp = rotp_;
    }
    cplx t = rp / ipow(n_, q_);
    for (size_t j = 0; j < p_.size(); ++j) {
      if (scaled_[j]) {
        u_scaled_[j] = u_scaled_[j] / args_[j].val + 1.0 / ipow(n_, p_[j]);
        t *= u_scaled_[j];
      } else {
        u_acc_[j].add(steppers_[j].next() / ipow(n_, p_[j]));
        t *= u_acc_[j].value();
      }
    }
    total_.add(t);
    return std::abs(t);
  }

  cplx total() const { return total_.value(); }
  long long n() const { return n_; }

  const std::vector<int>& p_;
  const std::vector<detail::WideParam>& args_;
  int q_;
  const std::vector<bool>& scaled_;
  detail::WideParam rot_;
  std::vector<cplx> rot_table_;
  cplx rotp_{1.0, 0.0};
  std::vector<cplx> u_scaled_;
  std::vector<ckbn_accumulator> u_acc_;
  std::vector<WideStepper> steppers_;
  ckbn_accumulator total_;
  long long n_ = 0;
};

}  // namespace

int EulerSumSpec::weight() const {
  int w = q;
  for (int v : p) w += v;
  return w;
}

std::string EulerSumSpec::canonical() const {
  const std::vector<size_t> order = canonical_order(*this);
  std::string out = "es|";
  for (size_t i = 0; i < order.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(p[order[i]]);
    out += ':';
    out += x[order[i]].serialize();
  }
  out += '|';
  out += std::to_string(q);
  out += '|';
  out += outer.serialize();
  return out;
}

void validate_eulersum(const EulerSumSpec& spec) {
  if (spec.p.empty()) throw domain_error("eulersum: depth must be >= 1");
  if (spec.p.size() != spec.x.size())
    throw domain_error("eulersum: exponent and argument lists differ in length");
  if (spec.p.size() > 64) throw domain_error("eulersum: depth too large");
  for (int v : spec.p)
    if (v < 1)
      throw domain_error("eulersum: exponents must be positive integers");
  if (spec.q < 1) throw domain_error("eulersum: outer exponent must be >= 1");
  if (spec.q == 1 && spec.outer.is_one())
    throw domain_error("eulersum: divergent — (q, x) = (1, 1)");
}

ValueWithError euler_sum_eval(const EulerSumSpec& spec, const EvalConfig& cfg) {
  cfg.validate();
  validate_eulersum(spec);
  const std::string key = spec.canonical();
  const bool boundary = std::abs(spec.outer.value()) > 1.0 - kCircleBand;
  const double tol = boundary ? cfg.boundary_target_tol : cfg.target_tol;
  if (auto hit = memo::lookup(key, tol)) return *hit;

  const std::vector<size_t> order = canonical_order(spec);
  std::vector<int> p;
  std::vector<detail::WideParam> args;
  p.reserve(order.size());
  args.reserve(order.size());
  for (size_t j : order) {
    p.push_back(spec.p[j]);
    args.push_back(detail::WideParam::from(spec.x[j]));
  }
  ValueWithError out = detail::euler_sum_raw(p, args, spec.q,
                                             detail::WideParam::from(spec.outer),
                                             tol, cfg);
  memo::store(key, out);
  return out;
}

std::vector<MplProductTerm> stuffle_linear(int p, const UnitParam& x, int q,
                                           const UnitParam& outer) {
  const std::array<UnitParam, 2> xy{x, outer};
  const UnitParam prod = param_product(xy);
  std::vector<MplProductTerm> out;
  out.push_back({1.0, std::nullopt, MplSpec{{p, q}, {x, outer}}});
  out.push_back({1.0, std::nullopt, MplSpec{{p + q}, {prod}}});
  return out;
}

std::vector<MplProductTerm> stuffle_quadratic(int p1, int p2,
                                              const UnitParam& x1,
                                              const UnitParam& x2, int q,
                                              const UnitParam& outer) {
  const std::array<UnitParam, 2> a12{x1, x2};
  const std::array<UnitParam, 2> a1o{x1, outer};
  const std::array<UnitParam, 2> a2o{x2, outer};
  const std::array<UnitParam, 3> a12o{x1, x2, outer};
  const UnitParam x12 = param_product(a12);
  const UnitParam x1o = param_product(a1o);
  const UnitParam x2o = param_product(a2o);
  const UnitParam x12o = param_product(a12o);
  std::vector<MplProductTerm> out;
  out.push_back({1.0, std::nullopt, MplSpec{{p1, p2, q}, {x1, x2, outer}}});
  out.push_back({1.0, std::nullopt, MplSpec{{p2, p1, q}, {x2, x1, outer}}});
  out.push_back({1.0, std::nullopt, MplSpec{{p1 + p2, q}, {x12, outer}}});
  out.push_back({1.0, std::nullopt, MplSpec{{p1, p2 + q}, {x1, x2o}}});
  out.push_back({1.0, std::nullopt, MplSpec{{p2, p1 + q}, {x2, x1o}}});
  out.push_back({1.0, std::nullopt, MplSpec{{p1 + p2 + q}, {x12o}}});
  return out;
}

std::vector<MplProductTerm> quadratic_to_mpl_chain(int p1, int p2,
                                                   const UnitParam& x1,
                                                   const UnitParam& x2, int q,
                                                   const UnitParam& outer) {
  if (p1 == 1 && x1.is_one())
    throw domain_error("chain rewriting requires (p_1, x_1) != (1, 1)");
  if (q == 1 && outer.is_one())
    throw domain_error("chain rewriting requires (q, x) != (1, 1)");
  const std::array<UnitParam, 2> a2o{x2, outer};
  const UnitParam x2o = param_product(a2o);
  std::vector<MplProductTerm> out;
  out.push_back({-1.0, std::nullopt, MplSpec{{p2, q, p1}, {x2, outer, x1}}});
  out.push_back({-1.0, std::nullopt, MplSpec{{p2 + q, p1}, {x2o, x1}}});
  out.push_back({1.0, PolylogKey{p1, x1}, MplSpec{{p2, q}, {x2, outer}}});
  out.push_back({1.0, PolylogKey{p1, x1}, MplSpec{{p2 + q}, {x2o}}});
  return out;
}

namespace detail {

WideParam WideParam::from(const UnitParam& u) {
  WideParam w;
  if (u.is_exact()) {
    w.exact = true;
    w.root = u.root();
    w.val = u.value();
  } else {
    w.exact = false;
    w.val = u.value();
  }
  return w;
}

WideParam WideParam::approx(cplx z) {
  WideParam w;
  w.exact = false;
  w.val = z;
  return w;
}

WideParam WideParam::inverse() const {
  if (exact) {
    WideParam w;
    w.exact = true;
    w.root = root.inverse();
    w.val = w.root.value();
    return w;
  }
  if (std::abs(val) == 0.0)
    throw domain_error("eulersum: zero argument has no inverse");
  return approx(1.0 / val);
}

WideParam WideParam::times(const WideParam& o) const {
  if (exact && o.exact) {
    WideParam w;
    w.exact = true;
    w.root = root.times(o.root);
    w.val = w.root.value();
    return w;
  }
  return approx(val * o.val);
}

bool WideParam::is_one() const {
  if (exact) return root.is_one();
  return std::abs(val - cplx{1.0, 0.0}) < 1e-12;
}

std::string WideParam::serialize() const {
  if (exact) {
    return "root:" + std::to_string(root.numer) + "/" +
           std::to_string(root.order);
  }
  std::ostringstream os;
  os << "w:" << std::setprecision(17) << val.real() << ","
     << std::setprecision(17) << val.imag();
  return os.str();
}

ValueWithError euler_sum_raw(const std::vector<int>& p,
                             const std::vector<WideParam>& args, int q,
                             const WideParam& outer, double tol,
                             const EvalConfig& cfg) {
  const int r = int(p.size());
  if (args.size() != p.size())
    throw internal_error("euler_sum_raw: exponent/argument shape mismatch");
  if (r < 1 || r > 64) throw domain_error("eulersum: depth out of range");
  for (int v : p)
    if (v < 1)
      throw domain_error("eulersum: exponents must be positive integers");
  if (q < 1) throw domain_error("eulersum: outer exponent must be >= 1");

  std::string key = "esw|";
  for (int j = 0; j < r; ++j) {
    if (j) key += ',';
    key += std::to_string(p[size_t(j)]);
    key += ':';
    key += args[size_t(j)].serialize();
  }
  key += '|';
  key += std::to_string(q);
  key += '|';
  key += outer.serialize();
  if (auto hit = memo::lookup(key, tol)) return *hit;

  std::vector<bool> scaled(size_t(r), false);
  WideParam rot = outer;
  double rho = std::abs(outer.val);
  for (int j = 0; j < r; ++j) {
    const double m = std::abs(args[size_t(j)].val);
    scaled[size_t(j)] = m > 1.0 + 1e-12;
    if (scaled[size_t(j)]) rot = rot.times(args[size_t(j)]);
    rho *= std::max(m, 1.0);
  }
  if (rho > 1.0 + 1e-9)
    throw domain_error(
        "eulersum: divergent — |x| * prod max(|x_j|, 1) exceeds 1");
  const bool boundary = rho > 1.0 - kCircleBand;
  if (boundary && q == 1 && rot.is_one())
    throw domain_error("eulersum: divergent — (q, x * x_1 ... x_k) = (1, 1)");

  int nlog = 0;
  for (int j = 0; j < r; ++j)
    if (p[size_t(j)] == 1 && !scaled[size_t(j)] && args[size_t(j)].is_one())
      ++nlog;

  // Folding period at the boundary: the oscillation sources are the
  // effective rotation and each on-circle unscaled factor. All-exact
  // sources fold to a smooth subsequence; any non-exact circle source
  // leaves residual oscillation, handled by a sequence transform instead.
  long long M = 1;
  bool fold_exact = true;
  if (boundary) {
    auto fold_in = [&](const WideParam& w) {
      if (w.exact)
        M = std::lcm(M, w.root.order);
      else
        fold_exact = false;
    };
    fold_in(rot);
    for (int j = 0; j < r; ++j) {
      if (scaled[size_t(j)]) continue;
      if (std::abs(args[size_t(j)].val) > 1.0 - kCircleBand)
        fold_in(args[size_t(j)]);
    }
  }

  SumPass pass(p, args, q, rot, scaled);
  ValueWithError out;

  if (!boundary) {
    const double gfac = rho / (1.0 - rho);
    double recent[4] = {};
    double bound = std::numeric_limits<double>::infinity();
    int streak = 0;
    while (pass.n() < cfg.max_terms) {
      const double mag = pass.step();
      recent[pass.n() & 3] = mag;
      bound =
          2.0 * gfac * std::max({recent[0], recent[1], recent[2], recent[3]});
      if (pass.n() > 16 + r && bound < tol * 0.5) {
        if (++streak >= 4) break;
      } else {
        streak = 0;
      }
    }
    stats::add_terms(pass.n() * (r + 1));
    out.value = pass.total();
    out.terms_used = pass.n();
    out.abs_err = bound + err_floor(out.value);
    if (streak < 4)
      throw convergence_error("eulersum: tolerance unreachable within max_terms",
                              out.value, out.abs_err);
    memo::store(key, out);
    return out;
  }

  // Boundary: staged checkpoints on multiples of the folding period. A
  // conditionally convergent q = 1 sum is always extrapolated; otherwise
  // AccelMode::None keeps the direct partial sum with a midpoint heuristic.
  const bool accelerate = (cfg.accel_mode != AccelMode::None) || (q == 1);
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
      if (!accelerate) {
        best = samples.back();
        best_err = std::abs(samples.back() - samples[samples.size() / 2]);
      } else {
        // Folded exact checkpoints follow the polynomial-in-1/N model
        // (times ln N powers per unit pair); residual oscillation from
        // non-exact circle parameters takes a sequence transform. Either
        // way a stage counts only once the next stage reproduces it.
        AccelResult a;
        if (fold_exact) {
          a = smooth_model_fit(samples, Ns, nlog, 4);
        } else if (cfg.accel_mode == AccelMode::LevinU) {
          a = levin_u(samples);
        } else {
          a = aitken_iterated(samples);
        }
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
  stats::add_terms(pass.n() * (r + 1));
  out.value = best;
  out.terms_used = pass.n();
  out.abs_err =
      std::max({best_err, accelerate ? 1e-3 * tol : 0.0, err_floor(best)});
  out.accelerated = accelerate;
  if (!(best_err <= tol))
    throw convergence_error(
        "eulersum: boundary tolerance unreachable within max_terms", out.value,
        out.abs_err);
  memo::store(key, out);
  return out;
}

}  // namespace detail

}  // namespace esum
