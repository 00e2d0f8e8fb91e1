#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "esum/cache.hpp"
#include "esum/eulersum.hpp"
#include "esum/mpl.hpp"
#include "esum/polylog.hpp"

using namespace esum;

namespace {
const double kPi = 3.14159265358979323846;
const double kTwoZeta3 = 2.4041138063191885708;
const double kPi4Over72 = 1.3529040421389227394;

EulerSumSpec make(std::vector<int> p, std::vector<UnitParam> x, int q,
                  UnitParam outer) {
  EulerSumSpec s;
  s.p = std::move(p);
  s.x = std::move(x);
  s.q = q;
  s.outer = outer;
  return s;
}

/// Definition oracle: literal double sum to N, no acceleration. Fine for
/// interior rotations and small N; also exercises |a| > 1 factor arguments
/// directly (the raw prefix stays representable at these sizes).
cplx brute_sum(const std::vector<int>& p, const std::vector<cplx>& a, int q,
               cplx x, long long N) {
  std::vector<cplx> zeta(p.size(), cplx{});
  std::vector<cplx> pw(p.size(), cplx{1.0, 0.0});
  ckbn_accumulator acc;
  cplx xp{1.0, 0.0};
  for (long long n = 1; n <= N; ++n) {
    xp *= x;
    cplx t = xp / ipow(n, q);
    for (size_t j = 0; j < p.size(); ++j) {
      pw[j] *= a[j];
      zeta[j] += pw[j] / ipow(n, p[j]);
      t *= zeta[j];
    }
    acc.add(t);
  }
  return acc.value();
}
}  // namespace

TEST_CASE("unit-argument classics hit their closed forms") {
  UnitParam one{};
  auto v2 = euler_sum_eval(make({1}, {one}, 2, one));
  CHECK(std::abs(v2.value.real() - kTwoZeta3) < 1e-8);
  CHECK(std::abs(v2.value.imag()) < 1e-10);
  CHECK(v2.abs_err <= 1e-6);

  auto v3 = euler_sum_eval(make({1}, {one}, 3, one));
  CHECK(std::abs(v3.value.real() - kPi4Over72) < 1e-8);
}

TEST_CASE("factor-pair symmetry is bitwise after canonicalization") {
  UnitParam a = UnitParam::approx(cplx{0.6, 0.1});
  UnitParam b = UnitParam::exact(1, 3);
  UnitParam y = UnitParam::approx(cplx{0.5, -0.2});
  EulerSumSpec ab = make({2, 3}, {a, b}, 2, y);
  EulerSumSpec ba = make({3, 2}, {b, a}, 2, y);
  CHECK(ab.canonical() == ba.canonical());
  memo::clear();
  auto va = euler_sum_eval(ab);
  memo::clear();
  auto vb = euler_sum_eval(ba);
  CHECK(va.value.real() == vb.value.real());
  CHECK(va.value.imag() == vb.value.imag());
  CHECK(va.abs_err == vb.abs_err);
}

TEST_CASE("interior rotation matches the inner-index splitting") {
  UnitParam x = UnitParam::approx(cplx{0.55, 0.0});
  UnitParam y = UnitParam::approx(cplx{0.5, 0.0});
  auto lhs = euler_sum_eval(make({2}, {x}, 2, y));
  auto rhs = eval_term_sum(stuffle_linear(2, x, 2, y));
  CHECK(std::abs(lhs.value - rhs.value) <
        lhs.abs_err + rhs.abs_err + 1e-10);
}

TEST_CASE("alternating boundary case matches the inner-index splitting") {
  UnitParam half = UnitParam::exact(1, 2);  // -1
  auto lhs = euler_sum_eval(make({2}, {half}, 2, half));
  auto rhs = eval_term_sum(stuffle_linear(2, half, 2, half));
  CHECK(std::abs(lhs.value - rhs.value) < 1e-6);
}

TEST_CASE("conditionally convergent q = 1 boundary sums are accelerated") {
  UnitParam one{};
  UnitParam neg = UnitParam::exact(1, 2);
  auto lhs = euler_sum_eval(make({2}, {one}, 1, neg));
  auto rhs = eval_term_sum(stuffle_linear(2, one, 1, neg));
  CHECK(lhs.accelerated);
  CHECK(std::abs(lhs.value - rhs.value) < 1e-5);

  EvalConfig none;
  none.accel_mode = AccelMode::None;
  memo::clear();
  auto forced = euler_sum_eval(make({2}, {one}, 1, neg), none);
  CHECK(forced.accelerated);  // direct summation cannot converge here
}

TEST_CASE("two-factor expansion: the six interleavings add up") {
  UnitParam x1 = UnitParam::approx(cplx{0.6, 0.0});
  UnitParam x2 = UnitParam::approx(cplx{0.5, 0.0});
  UnitParam y = UnitParam::approx(cplx{0.7, 0.0});
  auto lhs = euler_sum_eval(make({1, 2}, {x1, x2}, 2, y));
  auto rhs = eval_term_sum(stuffle_quadratic(1, 2, x1, x2, 2, y));
  CHECK(std::abs(lhs.value - rhs.value) < 1e-8);

  // alternating instance: both factors and the outer argument at -1
  UnitParam neg = UnitParam::exact(1, 2);
  auto alt_l = euler_sum_eval(make({2, 2}, {neg, neg}, 2, neg));
  auto alt_r = eval_term_sum(stuffle_quadratic(2, 2, neg, neg, 2, neg));
  CHECK(std::abs(alt_l.value - alt_r.value) < 1e-5);
}

TEST_CASE("chain rewriting reproduces the two-factor sum") {
  UnitParam neg = UnitParam::exact(1, 2);
  auto lhs = euler_sum_eval(make({2, 1}, {neg, neg}, 2, neg));
  auto terms = quadratic_to_mpl_chain(2, 1, neg, neg, 2, neg);
  REQUIRE(terms.size() == 4);
  // chained second argument: (-1) * (-1) = 1
  CHECK(terms[1].mpl.x[0].is_one());
  CHECK(terms[2].prefactor.has_value());
  auto rhs = eval_term_sum(terms);
  CHECK(std::abs(lhs.value - rhs.value) < 1e-5);

  UnitParam one{};
  CHECK_THROWS_AS((void)quadratic_to_mpl_chain(1, 2, one, neg, 2, neg),
                  domain_error);
  CHECK_THROWS_AS((void)quadratic_to_mpl_chain(2, 1, neg, neg, 1, one),
                  domain_error);
}

TEST_CASE("validation rejects the divergent harmonic corner by name") {
  UnitParam one{};
  try {
    (void)euler_sum_eval(make({1}, {one}, 1, one));
    FAIL("expected a domain error");
  } catch (const domain_error& e) {
    CHECK(std::string(e.what()).find("(q, x) = (1, 1)") != std::string::npos);
  }
  CHECK_THROWS_AS((void)euler_sum_eval(make({}, {}, 2, one)), domain_error);
  CHECK_THROWS_AS((void)euler_sum_eval(make({0}, {one}, 2, one)), domain_error);
}

TEST_CASE("wide-domain factor arguments match the definition oracle") {
  // factor argument outside the circle, compensated by a small rotation
  const cplx a{1.0 / 0.7, 0.0};
  const cplx x{0.35, 0.0};  // rho = 0.5
  auto got = detail::euler_sum_raw({1}, {detail::WideParam::approx(a)}, 3,
                                   detail::WideParam::approx(x), 1e-10,
                                   EvalConfig{});
  // the oracle's raw prefix grows like |a|^n, so keep N inside double
  // range; the truncation error ~ rho^N is still far below the check
  const cplx want = brute_sum({1}, {a}, 3, x, 600);
  CHECK(std::abs(got.value - want) < 1e-9);

  // complex exterior argument as the identity layer produces them
  const cplx b{1.25, -0.5};
  const cplx y = 0.6 / b;
  auto g2 = detail::euler_sum_raw({2}, {detail::WideParam::approx(b)}, 2,
                                  detail::WideParam::approx(y), 1e-10,
                                  EvalConfig{});
  const cplx w2 = brute_sum({2}, {b}, 2, y, 800);
  CHECK(std::abs(g2.value - w2) < 1e-9);
}

TEST_CASE("wide-domain divergence guard names the growth bound") {
  try {
    (void)detail::euler_sum_raw(
        {1}, {detail::WideParam::approx(cplx{2.0, 0.0})}, 2,
        detail::WideParam::approx(cplx{0.9, 0.0}), 1e-8, EvalConfig{});
    FAIL("expected a domain error");
  } catch (const domain_error& e) {
    CHECK(std::string(e.what()).find("exceeds 1") != std::string::npos);
  }
}

TEST_CASE("non-root circle rotation agrees with a long direct sum") {
  const cplx x{0.5, 0.0};
  const cplx y{std::cos(1.0), std::sin(1.0)};
  EvalConfig cfg;
  auto got = detail::euler_sum_raw({2}, {detail::WideParam::approx(x)}, 2,
                                   detail::WideParam::approx(y),
                                   cfg.boundary_target_tol, cfg);
  const cplx want = brute_sum({2}, {x}, 2, y, 2000000);
  CHECK(got.accelerated);
  CHECK(std::abs(got.value - want) < 1e-5);
}

TEST_CASE("repeat evaluations are served from the memo") {
  UnitParam one{};
  memo::clear();
  auto cold = euler_sum_eval(make({1}, {one}, 2, one));
  auto warm = euler_sum_eval(make({1}, {one}, 2, one));
  CHECK(cold.terms_used > 0);
  CHECK(warm.terms_used == 0);
  CHECK(warm.value.real() == cold.value.real());
  CHECK(warm.value.imag() == cold.value.imag());
}

TEST_CASE("weight and canonical key shape") {
  UnitParam one{};
  UnitParam neg = UnitParam::exact(1, 2);
  EulerSumSpec s = make({2, 1}, {neg, one}, 3, neg);
  CHECK(s.weight() == 6);
  CHECK(s.canonical() == "es|1:root:0/1,2:root:1/2|3|root:1/2");
}
