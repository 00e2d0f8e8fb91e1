#include "esum/laurent.hpp"

#include <algorithm>
#include <cmath>

namespace esum {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_common_center(const LaurentSeries& a, const LaurentSeries& b,
                           const char* op) {
  if (a.center != b.center)
    throw domain_error(std::string("laurent: ") + op +
                       " requires a common expansion center");
}

}  // namespace

void ls_validate(const LaurentSeries& a) {
  if (a.coeffs.empty()) throw domain_error("laurent: empty window");
  if (a.trunc_order - a.min_order + 1 != (long long)a.coeffs.size())
    throw domain_error("laurent: window length disagrees with its orders");
  if (!finite(a.center)) throw domain_error("laurent: non-finite center");
  for (cplx c : a.coeffs)
    if (!finite(c)) throw domain_error("laurent: non-finite coefficient");
}

LaurentSeries ls_add(const LaurentSeries& a, const LaurentSeries& b) {
  ls_validate(a);
  ls_validate(b);
  require_common_center(a, b, "addition");
  LaurentSeries out;
  out.center = a.center;
  out.min_order = std::min(a.min_order, b.min_order);
  out.trunc_order = std::min(a.trunc_order, b.trunc_order);
  if (out.trunc_order < out.min_order)
    throw domain_error("laurent: addition leaves no trusted orders");
  out.coeffs.assign(size_t(out.trunc_order - out.min_order + 1), cplx{});
  for (long long k = out.min_order; k <= out.trunc_order; ++k) {
    cplx c{};
    if (k >= a.min_order && k <= a.trunc_order)
      c += a.coeffs[size_t(k - a.min_order)];
    if (k >= b.min_order && k <= b.trunc_order)
      c += b.coeffs[size_t(k - b.min_order)];
    out.coeffs[size_t(k - out.min_order)] = c;
  }
  return out;
}

LaurentSeries ls_scale(const LaurentSeries& a, cplx c) {
  ls_validate(a);
  LaurentSeries out = a;
  for (cplx& v : out.coeffs) v *= c;
  return out;
}

LaurentSeries ls_mul(const LaurentSeries& a, const LaurentSeries& b) {
  ls_validate(a);
  ls_validate(b);
  require_common_center(a, b, "multiplication");
  LaurentSeries out;
  out.center = a.center;
  out.min_order = a.min_order + b.min_order;
  out.trunc_order =
      std::min(a.min_order + b.trunc_order, a.trunc_order + b.min_order);
  out.coeffs.assign(size_t(out.trunc_order - out.min_order + 1), cplx{});
  for (size_t i = 0; i < a.coeffs.size(); ++i) {
    const long long oi = a.min_order + (long long)i;
    for (size_t j = 0; j < b.coeffs.size(); ++j) {
      const long long k = oi + b.min_order + (long long)j;
      if (k > out.trunc_order) break;
      out.coeffs[size_t(k - out.min_order)] += a.coeffs[i] * b.coeffs[j];
    }
  }
  return out;
}

cplx ls_coeff(const LaurentSeries& a, long long k) {
  ls_validate(a);
  if (k < a.min_order)
    throw domain_error("laurent: coefficient requested below the window");
  if (k > a.trunc_order)
    throw domain_error("laurent: coefficient requested beyond the truncation");
  return a.coeffs[size_t(k - a.min_order)];
}

cplx ls_residue(const LaurentSeries& a) {
  ls_validate(a);
  if (a.min_order > -1) return cplx{};  // no pole part stored: analytic there
  if (a.trunc_order < -1)
    throw domain_error("laurent: residue lies beyond the truncation");
  return a.coeffs[size_t(-1 - a.min_order)];
}

cplx ls_eval(const LaurentSeries& a, cplx s) {
  ls_validate(a);
  const cplx d = s - a.center;
  // Horner over the stored window, then shift by the leading order.
  cplx acc{};
  for (size_t i = a.coeffs.size(); i-- > 0;) acc = acc * d + a.coeffs[i];
  if (a.min_order >= 0) return acc * cpow_u(d, a.min_order);
  return acc / cpow_u(d, -a.min_order);
}

LaurentSeries pole_shift_binomial(int q, cplx a, int terms) {
  if (q < 1) throw domain_error("laurent: pole order must be >= 1");
  if (terms < 1) throw domain_error("laurent: need at least one term");
  if (std::abs(a) == 0.0)
    throw domain_error("laurent: re-expansion center must be nonzero");
  LaurentSeries out;
  out.center = a;
  out.min_order = 0;
  out.trunc_order = terms - 1;
  out.coeffs.resize(size_t(terms));
  const cplx inv = 1.0 / a;
  cplx pw = cpow_u(inv, q);  // a^{-q-k}, advanced once per k
  for (int k = 0; k < terms; ++k) {
    out.coeffs[size_t(k)] = binom(k + q - 1, q - 1) * neg1pow(k) * pw;
    pw *= inv;
  }
  return out;
}

}  // namespace esum
