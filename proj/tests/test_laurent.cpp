#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>
#include <random>
#include <vector>

#include "esum/laurent.hpp"

using namespace esum;

namespace {

LaurentSeries make(cplx center, long long min_order, std::vector<cplx> coeffs) {
  LaurentSeries s;
  s.center = center;
  s.min_order = min_order;
  s.trunc_order = min_order + (long long)coeffs.size() - 1;
  s.coeffs = std::move(coeffs);
  return s;
}

bool close(cplx a, cplx b, double tol = 1e-13) { return std::abs(a - b) < tol; }

}  // namespace

TEST_CASE("pole times pole: (1/s) * (1/s) = 1/s^2") {
  auto inv = make({}, -1, {cplx{1.0, 0.0}});
  auto prod = ls_mul(inv, inv);
  CHECK(prod.min_order == -2);
  CHECK(prod.trunc_order == -2);
  CHECK(close(ls_coeff(prod, -2), cplx{1.0, 0.0}));
}

TEST_CASE("(1/s + 1)(1/s - 1) = 1/s^2 - 1 given wide enough windows") {
  // padding with explicit zeros keeps the product trusted through order 0
  auto a = make({}, -1, {{1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}});
  auto b = make({}, -1, {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 0.0}});
  auto prod = ls_mul(a, b);
  CHECK(prod.min_order == -2);
  CHECK(prod.trunc_order == 0);
  CHECK(close(ls_coeff(prod, -2), cplx{1.0, 0.0}));
  CHECK(close(ls_coeff(prod, -1), cplx{}));
  CHECK(close(ls_coeff(prod, 0), cplx{-1.0, 0.0}));
}

TEST_CASE("residue extraction and its conventions") {
  auto f = make({}, -2, {{1.0, 0.0}, {3.0, 0.0}, {2.0, 0.0}});
  CHECK(close(ls_residue(f), cplx{3.0, 0.0}));

  // window starting at order 0: analytic at the center, residue exactly 0
  auto g = make({}, 0, {{5.0, 0.0}, {1.0, 0.0}});
  CHECK(ls_residue(g) == cplx{});

  // window truncated before reaching order -1: nothing can be certified
  auto h = make({}, -4, {{1.0, 0.0}, {2.0, 0.0}});
  CHECK_THROWS_AS((void)ls_residue(h), domain_error);
}

TEST_CASE("coefficient access is strict in both directions") {
  auto f = make({}, -1, {{1.0, 0.0}, {2.0, 0.0}});
  CHECK(close(ls_coeff(f, 0), cplx{2.0, 0.0}));
  CHECK_THROWS_AS((void)ls_coeff(f, -2), domain_error);
  CHECK_THROWS_AS((void)ls_coeff(f, 1), domain_error);
}

TEST_CASE("mismatched centers and malformed windows are rejected") {
  auto a = make({}, 0, {{1.0, 0.0}});
  auto b = make({1.0, 0.0}, 0, {{1.0, 0.0}});
  CHECK_THROWS_AS((void)ls_add(a, b), domain_error);
  CHECK_THROWS_AS((void)ls_mul(a, b), domain_error);

  LaurentSeries bad;
  bad.min_order = 0;
  bad.trunc_order = 3;
  bad.coeffs = {cplx{1.0, 0.0}};  // length disagrees with the orders
  CHECK_THROWS_AS(ls_validate(bad), domain_error);
  LaurentSeries empty;
  empty.coeffs.clear();
  CHECK_THROWS_AS(ls_validate(empty), domain_error);
}

TEST_CASE("ring axioms hold on seeded random windows") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::uniform_int_distribution<int> Lo(-3, 0), Len(4, 6);
  auto rand_series = [&]() {
    const int lo = Lo(rng), len = Len(rng);
    std::vector<cplx> c;
    c.resize(size_t(len));
    for (auto& v : c) v = cplx{U(rng), U(rng)};
    return make({}, lo, std::move(c));
  };
  for (int trial = 0; trial < 10; ++trial) {
    auto a = rand_series(), b = rand_series(), c = rand_series();

    auto ab = ls_mul(a, b), ba = ls_mul(b, a);
    REQUIRE(ab.min_order == ba.min_order);
    REQUIRE(ab.trunc_order == ba.trunc_order);
    for (size_t i = 0; i < ab.coeffs.size(); ++i)
      CHECK(close(ab.coeffs[i], ba.coeffs[i]));

    auto ab_c = ls_mul(ab, c), a_bc = ls_mul(a, ls_mul(b, c));
    REQUIRE(ab_c.min_order == a_bc.min_order);
    REQUIRE(ab_c.trunc_order == a_bc.trunc_order);
    for (size_t i = 0; i < ab_c.coeffs.size(); ++i)
      CHECK(close(ab_c.coeffs[i], a_bc.coeffs[i]));

    auto lhs = ls_mul(a, ls_add(b, c));
    auto rhs = ls_add(ls_mul(a, b), ls_mul(a, c));
    REQUIRE(lhs.min_order == rhs.min_order);
    REQUIRE(lhs.trunc_order == rhs.trunc_order);
    for (size_t i = 0; i < lhs.coeffs.size(); ++i)
      CHECK(close(lhs.coeffs[i], rhs.coeffs[i]));
  }
}

TEST_CASE("product coefficients match a direct convolution oracle") {
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<cplx> ca(5), cb(4);
    for (auto& v : ca) v = cplx{U(rng), U(rng)};
    for (auto& v : cb) v = cplx{U(rng), U(rng)};
    // generous zero padding so every order of the true product is trusted
    std::vector<cplx> pa = ca, pb = cb;
    pa.resize(12, cplx{});
    pb.resize(12, cplx{});
    auto prod = ls_mul(make({}, -2, pa), make({}, -1, pb));
    for (long long k = -3; k <= 4; ++k) {
      cplx want{};
      for (size_t i = 0; i < ca.size(); ++i)
        for (size_t j = 0; j < cb.size(); ++j)
          if ((-2 + (long long)i) + (-1 + (long long)j) == k)
            want += ca[i] * cb[j];
      CHECK(close(ls_coeff(prod, k), want));
    }
  }
}

TEST_CASE("pointwise evaluation factors through the product") {
  auto a = make({}, -1, {{1.0, 0.0}, {0.5, -0.25}, {0.0, 1.0}, {}, {}, {}});
  auto b = make({}, 0, {{2.0, 0.0}, {0.0, -1.0}, {0.25, 0.0}, {}, {}, {}});
  auto prod = ls_mul(a, b);
  for (cplx s : {cplx{0.3, 0.2}, cplx{-0.7, 0.1}, cplx{0.05, -0.4}}) {
    CHECK(close(ls_eval(prod, s), ls_eval(a, s) * ls_eval(b, s), 1e-12));
  }
}

TEST_CASE("re-expanding 1/s^q around a nonzero center") {
  auto w1 = pole_shift_binomial(1, cplx{1.0, 0.0}, 3);
  CHECK(w1.min_order == 0);
  CHECK(w1.trunc_order == 2);
  CHECK(close(w1.coeffs[0], cplx{1.0, 0.0}));
  CHECK(close(w1.coeffs[1], cplx{-1.0, 0.0}));
  CHECK(close(w1.coeffs[2], cplx{1.0, 0.0}));

  auto w2 = pole_shift_binomial(2, cplx{-1.0, 0.0}, 2);
  CHECK(close(w2.coeffs[0], cplx{1.0, 0.0}));
  CHECK(close(w2.coeffs[1], cplx{2.0, 0.0}));

  // the window really is the local expansion: compare pointwise
  const cplx a{2.0, 0.0};
  auto w = pole_shift_binomial(3, a, 24);
  const cplx s{2.3, 0.1};
  CHECK(close(ls_eval(w, s), 1.0 / cpow_u(s, 3), 1e-10));

  CHECK_THROWS_AS((void)pole_shift_binomial(0, a, 2), domain_error);
  CHECK_THROWS_AS((void)pole_shift_binomial(2, cplx{}, 2), domain_error);
  CHECK_THROWS_AS((void)pole_shift_binomial(2, a, 0), domain_error);
}
