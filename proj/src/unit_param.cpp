#include "esum/unit_param.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <numeric>

namespace esum {

cplx RootOfUnity::value() const {
  // Quarter-circle roots get exact components so that identities on the
  // common test points (1, -1, +-i) hold to the last bit.
  long long q4 = (4 * numer) % order;
  if (q4 == 0 && (4 * numer) / order >= 0) {
    switch ((4 * numer) / order) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      case 3: return {0.0, -1.0};
      default: break;
    }
  }
  double ang = 2.0 * std::numbers::pi * double(numer) / double(order);
  return {std::cos(ang), std::sin(ang)};
}

cplx RootOfUnity::pow(long long n) const {
  long long e = n % order;
  if (e < 0) e += order;
  // numer < order and e < order keep the product far below overflow.
  return root_of_unity(numer * e, order).value();
}

RootOfUnity RootOfUnity::inverse() const {
  return root_of_unity((order - numer) % order, order);
}

RootOfUnity RootOfUnity::times(const RootOfUnity& o) const {
  long long l = std::lcm(order, o.order);
  return root_of_unity(numer * (l / order) + o.numer * (l / o.order), l);
}

RootOfUnity root_of_unity(long long a, long long N) {
  if (N < 1) throw domain_error("root_of_unity: order must be >= 1");
  a %= N;
  if (a < 0) a += N;
  long long g = std::gcd(a, N);
  a /= g;
  N /= g;
  if (a == 0) N = 1;  // identity normalizes to (0, 1)
  return RootOfUnity{a, N};
}

UnitParam UnitParam::approx(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw domain_error("UnitParam: non-finite complex value");
  if (std::abs(z) > 1.0 + kUnitTol)
    throw domain_error("UnitParam: |z| exceeds the closed unit disk bound");
  return UnitParam(z, false);
}

const RootOfUnity& UnitParam::root() const {
  if (!exact_) throw internal_error("UnitParam::root on an Approx value");
  return root_;
}

bool UnitParam::is_one() const {
  if (exact_) return root_.is_one();
  return std::abs(approx_ - cplx{1.0, 0.0}) <= kUnitTol;
}

bool UnitParam::on_circle() const {
  if (exact_) return true;
  return std::abs(std::abs(approx_) - 1.0) <= kUnitTol;
}

UnitParam UnitParam::inverse() const {
  if (exact_) return UnitParam(root_.inverse());
  if (std::abs(approx_) < 1.0 - kUnitTol)
    throw domain_error(
        "param_inverse: interior Approx value has no inverse inside the disk");
  return UnitParam(std::conj(approx_), false);
}

cplx UnitParam::pow(long long n) const {
  if (exact_) return root_.pow(n);
  if (n >= 0) return cpow_u(approx_, n);
  if (!on_circle())
    throw domain_error("UnitParam::pow: negative power of an interior value");
  return cpow_u(std::conj(approx_), -n);
}

std::string UnitParam::serialize() const {
  char buf[80];
  if (exact_) {
    std::snprintf(buf, sizeof buf, "root:%lld/%lld", root_.numer, root_.order);
  } else {
    std::snprintf(buf, sizeof buf, "c:%.17g%+.17gi", approx_.real(),
                  approx_.imag());
  }
  return buf;
}

namespace {

long long parse_ll(const std::string& s, size_t from, size_t to) {
  long long out = 0;
  auto res = std::from_chars(s.data() + from, s.data() + to, out);
  if (res.ec != std::errc{} || res.ptr != s.data() + to)
    throw domain_error("parameter parse: bad integer in '" + s + "'");
  return out;
}

}  // namespace

UnitParam UnitParam::parse(const std::string& text) {
  if (text.rfind("root:", 0) == 0) {
    size_t slash = text.find('/', 5);
    if (slash == std::string::npos)
      throw domain_error("parameter parse: expected root:a/N in '" + text + "'");
    long long a = parse_ll(text, 5, slash);
    long long N = parse_ll(text, slash + 1, text.size());
    return UnitParam::exact(root_of_unity(a, N));
  }
  if (text.rfind("c:", 0) == 0) {
    if (text.empty() || text.back() != 'i')
      throw domain_error("parameter parse: expected trailing 'i' in '" + text + "'");
    std::string body = text.substr(2, text.size() - 3);
    // Split at the sign of the imaginary part: the last '+'/'-' that is not
    // an exponent sign and not the leading sign of the real part.
    size_t split = std::string::npos;
    for (size_t i = body.size(); i-- > 1;) {
      char c = body[i];
      if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
        split = i;
        break;
      }
    }
    if (split == std::string::npos)
      throw domain_error("parameter parse: expected RE+IMi in '" + text + "'");
    char* end = nullptr;
    std::string re_s = body.substr(0, split), im_s = body.substr(split);
    double re = std::strtod(re_s.c_str(), &end);
    if (end != re_s.c_str() + re_s.size())
      throw domain_error("parameter parse: bad real part in '" + text + "'");
    double im = std::strtod(im_s.c_str(), &end);
    if (end != im_s.c_str() + im_s.size())
      throw domain_error("parameter parse: bad imaginary part in '" + text + "'");
    return UnitParam::approx({re, im});
  }
  throw domain_error("parameter parse: expected 'root:a/N' or 'c:RE+IMi', got '" +
                     text + "'");
}

bool UnitParam::operator==(const UnitParam& o) const {
  if (exact_ != o.exact_) return false;
  return exact_ ? root_ == o.root_ : approx_ == o.approx_;
}

UnitParam param_product(std::span<const UnitParam> ps) {
  bool all_exact = true;
  for (const auto& p : ps) all_exact = all_exact && p.is_exact();
  if (all_exact) {
    RootOfUnity acc{0, 1};
    for (const auto& p : ps) acc = acc.times(p.root());
    return UnitParam::exact(acc);
  }
  cplx acc{1.0, 0.0};
  for (const auto& p : ps) acc *= p.value();
  return UnitParam(acc, false);  // private ctor: skip disk re-validation
}

}  // namespace esum
