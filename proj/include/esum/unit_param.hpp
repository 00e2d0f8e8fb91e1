#pragma once

/**
 * Exact root-of-unity arithmetic and the unit-disk parameter type used for
 * every series argument. Roots of unity carry exact rational angles so that
 * convergence preconditions such as "(p, x) != (1, 1)" are decided exactly;
 * floating arguments are accepted on the closed unit disk with a small
 * representation-noise tolerance.
 */

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "esum/common.hpp"

namespace esum {

/// Tolerance band around the unit circle / unit disk boundary: 2^-40.
inline constexpr double kUnitTol = 1.0 / (1024.0 * 1024.0 * 1024.0 * 1024.0);

/**
 * e^{2*pi*i*numer/order} stored in lowest terms (gcd(numer, order) = 1,
 * identity as (0, 1)). Supports exact inverse, product, and integer powers
 * without floating drift.
 */
struct RootOfUnity {
  long long numer = 0;  ///< 0 <= numer < order
  long long order = 1;  ///< >= 1

  bool operator==(const RootOfUnity&) const = default;

  bool is_one() const { return numer == 0; }

  /// Complex value; exact component values for orders dividing 4.
  cplx value() const;

  /// Value of the n-th power (n may be negative); exact angle arithmetic.
  cplx pow(long long n) const;

  RootOfUnity inverse() const;
  RootOfUnity times(const RootOfUnity& o) const;
};

/// Reduced representation of e^{2*pi*i*a/N}; N >= 1 required.
RootOfUnity root_of_unity(long long a, long long N);

/**
 * Tagged union of an exact root of unity and a floating complex number on
 * the closed unit disk (|z| <= 1 + 2^-40).
 */
class UnitParam {
 public:
  UnitParam() : exact_(true), root_{0, 1} {}  // defaults to 1

  static UnitParam exact(RootOfUnity r) { return UnitParam(r); }
  static UnitParam exact(long long a, long long N) {
    return UnitParam(root_of_unity(a, N));
  }
  /// Validates |z| <= 1 + 2^-40 and rejects non-finite values.
  static UnitParam approx(cplx z);

  bool is_exact() const { return exact_; }
  const RootOfUnity& root() const;
  cplx value() const { return exact_ ? root_.value() : approx_; }

  /// True for the exact identity root, or an Approx within 2^-40 of 1.
  bool is_one() const;

  /// True when the modulus is 1 (exactly for roots; within 2^-40 for Approx).
  bool on_circle() const;

  /// Root order for Exact values; 0 for Approx.
  long long order() const { return exact_ ? root_.order : 0; }

  /// Inverse on the unit circle. Approx values strictly inside the disk
  /// have no admissible inverse and raise a domain error.
  UnitParam inverse() const;

  /// n-th power value (n may be negative only for on-circle parameters).
  cplx pow(long long n) const;

  /// Canonical string form: "root:a/N" or "c:RE+IMi" (17 significant digits).
  std::string serialize() const;

  /// Parses the canonical grammar; throws domain_error on syntax errors.
  static UnitParam parse(const std::string& text);

  bool operator==(const UnitParam& o) const;

 private:
  explicit UnitParam(RootOfUnity r) : exact_(true), root_(r) {}
  explicit UnitParam(cplx z, bool) : exact_(false), approx_(z) {}

  friend UnitParam param_product(std::span<const UnitParam> ps);

  bool exact_;
  RootOfUnity root_{0, 1};
  cplx approx_{};
};

/// Product of parameters: Exact stays Exact; any Approx factor makes the
/// result Approx (constructed without re-validation, since rounding can
/// push a product of admissible factors marginally past the disk bound).
UnitParam param_product(std::span<const UnitParam> ps);

/// Inverse wrapper matching the module-level operation name.
inline UnitParam param_inverse(const UnitParam& p) { return p.inverse(); }

namespace detail {

/**
 * Emits x^1, x^2, x^3, ... on successive next() calls. Exact roots read a
 * precomputed power table (drift-free); floating arguments run a product
 * that is re-anchored by squared exponentiation every 4096 steps so long
 * scans cannot accumulate phase drift.
 */
class PowerStepper {
 public:
  explicit PowerStepper(const UnitParam& x) {
    if (x.is_exact()) {
      const RootOfUnity& r = x.root();
      table_.resize(size_t(r.order));
      for (long long j = 0; j < r.order; ++j) table_[size_t(j)] = r.pow(j);
    } else {
      z_ = x.value();
    }
  }

  cplx next() {
    ++n_;
    if (!table_.empty()) return table_[size_t(n_ % (long long)table_.size())];
    zp_ = ((n_ & 4095) == 0) ? cpow_u(z_, n_) : zp_ * z_;
    return zp_;
  }

  long long position() const { return n_; }

 private:
  std::vector<cplx> table_;
  cplx z_{};
  cplx zp_{1.0, 0.0};
  long long n_ = 0;
};

}  // namespace detail

}  // namespace esum
