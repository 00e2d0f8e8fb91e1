#include "esum/accel.hpp"

#include <limits>

namespace esum {

namespace {

/// Picks the entry of a transform history with the smallest local
/// fluctuation |h[m]-h[m-1]| + |h[m-1]-h[m-2]|.
AccelResult pick_stable(const std::vector<cplx>& hist) {
  AccelResult out{hist.back(), std::numeric_limits<double>::infinity()};
  for (size_t m = 2; m < hist.size(); ++m) {
    double d = std::abs(hist[m] - hist[m - 1]) + std::abs(hist[m - 1] - hist[m - 2]);
    if (d < out.err) {
      out.err = d;
      out.value = hist[m];
    }
  }
  if (!std::isfinite(out.err)) {
    // Degenerate history: fall back to the last raw entry.
    out.err = hist.size() >= 2 ? std::abs(hist.back() - hist[hist.size() - 2]) : 1.0;
  }
  return out;
}

}  // namespace

AccelResult levin_u(const std::vector<cplx>& s, double beta) {
  if (s.size() < 3) {
    double e = s.size() >= 2 ? std::abs(s.back() - s[s.size() - 2]) : 1.0;
    return {s.empty() ? cplx{} : s.back(), e};
  }
  size_t K = s.size();
  std::vector<cplx> a(K);
  a[0] = s[0];
  for (size_t i = 1; i < K; ++i) a[i] = s[i] - s[i - 1];

  std::vector<cplx> N, D;
  N.reserve(K);
  D.reserve(K);
  for (size_t n = 0; n < K; ++n) {
    cplx om = (beta + double(n)) * a[n];
    if (om == cplx{}) break;
    N.push_back(s[n] / om);
    D.push_back(1.0 / om);
  }
  K = N.size();
  if (K < 3) {
    double e = std::abs(s.back() - s[s.size() - 2]);
    return {s.back(), e};
  }

  std::vector<cplx> hist{s.back()};
  for (size_t k = 1; k < K; ++k) {
    std::vector<cplx> NN(K - k), DD(K - k);
    for (size_t n = 0; n < K - k; ++n) {
      double b = 1.0;
      if (k >= 2) {
        b = (beta + double(n)) *
            std::pow(beta + double(n + k) - 1.0, double(k) - 2.0) /
            std::pow(beta + double(n + k), double(k) - 1.0);
      }
      NN[n] = N[n + 1] - b * N[n];
      DD[n] = D[n + 1] - b * D[n];
    }
    N.swap(NN);
    D.swap(DD);
    if (std::abs(D[0]) > 1e-300) hist.push_back(N[0] / D[0]);
  }
  return pick_stable(hist);
}

AccelResult aitken_iterated(const std::vector<cplx>& s) {
  if (s.size() < 3) {
    double e = s.size() >= 2 ? std::abs(s.back() - s[s.size() - 2]) : 1.0;
    return {s.empty() ? cplx{} : s.back(), e};
  }
  std::vector<cplx> cur = s;
  std::vector<cplx> hist{cur.back()};
  while (cur.size() >= 3) {
    std::vector<cplx> nxt(cur.size() - 2);
    for (size_t i = 0; i + 2 < cur.size(); ++i) {
      cplx d1 = cur[i + 1] - cur[i];
      cplx d2 = cur[i + 2] - 2.0 * cur[i + 1] + cur[i];
      nxt[i] = (d2 == cplx{}) ? cur[i + 2] : cur[i] - d1 * d1 / d2;
    }
    cur.swap(nxt);
    hist.push_back(cur.back());
  }
  return pick_stable(hist);
}

namespace {

/**
 * Householder QR least squares min ||A c - y|| for a K x C real matrix with
 * complex right-hand side, in extended precision. Returns the coefficient
 * vector and the residual norm.
 */
void qr_lstsq(std::vector<std::vector<long double>>& A,
              std::vector<std::complex<long double>>& y,
              std::vector<std::complex<long double>>& coef, long double& resid) {
  size_t K = A.size(), C = A[0].size();
  for (size_t c = 0; c < C; ++c) {
    long double nrm = 0;
    for (size_t r = c; r < K; ++r) nrm += A[r][c] * A[r][c];
    nrm = std::sqrt(nrm);
    if (nrm == 0) continue;
    long double alpha = A[c][c] > 0 ? -nrm : nrm;
    std::vector<long double> v(K, 0);
    v[c] = A[c][c] - alpha;
    for (size_t r = c + 1; r < K; ++r) v[r] = A[r][c];
    long double vtv = 0;
    for (size_t r = c; r < K; ++r) vtv += v[r] * v[r];
    if (vtv == 0) continue;
    for (size_t cc = c; cc < C; ++cc) {
      long double dot = 0;
      for (size_t r = c; r < K; ++r) dot += v[r] * A[r][cc];
      long double f = 2 * dot / vtv;
      for (size_t r = c; r < K; ++r) A[r][cc] -= f * v[r];
    }
    std::complex<long double> doty = 0;
    for (size_t r = c; r < K; ++r) doty += v[r] * y[r];
    std::complex<long double> f = (long double)2 * doty / vtv;
    for (size_t r = c; r < K; ++r) y[r] -= f * v[r];
  }
  coef.assign(C, {});
  for (size_t c = C; c-- > 0;) {
    std::complex<long double> acc = y[c];
    for (size_t cc = c + 1; cc < C; ++cc) acc -= A[c][cc] * coef[cc];
    coef[c] = (A[c][c] != 0) ? acc / A[c][c] : std::complex<long double>{};
  }
  resid = 0;
  for (size_t r = C; r < K; ++r) resid += std::norm(y[r]);
  resid = std::sqrt(resid);
}

}  // namespace

AccelResult smooth_model_fit(const std::vector<cplx>& s,
                             const std::vector<long long>& Ns, int nlog,
                             int tpow) {
  size_t K = s.size();
  size_t C = 1 + size_t(tpow) * size_t(nlog + 1);
  if (K < C + 2) return {s.empty() ? cplx{} : s.back(), 1.0};

  std::vector<std::vector<long double>> A(K, std::vector<long double>(C, 0));
  std::vector<long double> scale(C, 0);
  for (size_t r = 0; r < K; ++r) A[r][0] = 1.0L;
  size_t c = 1;
  for (int t = 1; t <= tpow; ++t) {
    for (int m = 0; m <= nlog; ++m, ++c) {
      for (size_t r = 0; r < K; ++r) {
        long double lg = std::log((long double)Ns[r]);
        A[r][c] = std::pow(lg, (long double)m) /
                  std::pow((long double)Ns[r], (long double)t);
      }
    }
  }
  for (size_t cc = 0; cc < C; ++cc) {
    long double n2 = 0;
    for (size_t r = 0; r < K; ++r) n2 += A[r][cc] * A[r][cc];
    scale[cc] = std::sqrt(n2);
    if (scale[cc] == 0) scale[cc] = 1;
    for (size_t r = 0; r < K; ++r) A[r][cc] /= scale[cc];
  }
  std::vector<std::complex<long double>> y(K);
  for (size_t r = 0; r < K; ++r) y[r] = {(long double)s[r].real(), (long double)s[r].imag()};

  std::vector<std::complex<long double>> coef;
  long double resid = 0;
  qr_lstsq(A, y, coef, resid);
  std::complex<long double> L = coef[0] / scale[0];
  return {cplx{(double)L.real(), (double)L.imag()}, (double)resid};
}

cplx richardson3(const std::array<long long, 3>& Ns,
                 const std::array<cplx, 3>& Ts, int e1) {
  cplx L1 = richardson2(double(Ns[0]), Ts[0], double(Ns[1]), Ts[1], e1);
  cplx L2 = richardson2(double(Ns[1]), Ts[1], double(Ns[2]), Ts[2], e1);
  return richardson2(double(Ns[1]), L1, double(Ns[2]), L2, e1 + 1);
}

}  // namespace esum
