#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qcspectra/errors.hpp"
#include "qcspectra/laurent.hpp"

using namespace qcspectra;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::config;
}

}  // namespace

TEST_CASE("b matches its trigonometric form on the circle") {
  const std::vector<double> phi{1.0, -0.3, 0.2, -0.05};
  const LaurentPoly b = build_b(Coefficients(phi));
  CHECK(b.is_palindromic(1e-15));
  CHECK(b.bandwidth() == 4);
  for (double theta : {0.0, 0.4, 1.3, 2.9, std::numbers::pi}) {
    CHECK(b.on_circle(theta).real() == doctest::Approx(oracle::b_on_circle(phi, theta)).scale(1.0));
  }
}

TEST_CASE("b1 divides out the squared Laplacian symbol") {
  const std::vector<double> phi{1.0, -0.3, -0.1, -0.04, -0.01};
  const Coefficients c(phi);
  const LaurentPoly b1 = build_b1(c);
  CHECK(b1.lo() == -3);
  CHECK(b1.hi() == 3);
  const LaurentPoly lap = laplacian_symbol();
  CHECK(max_coeff_distance(laurent_mul(laurent_mul(b1, lap), lap), build_b(c)) <= 1e-14);
  for (double beta : {0.2, 0.7, 1.1, std::numbers::pi / 2}) {
    CHECK(b1.on_circle(2.0 * beta).real() == doctest::Approx(oracle::b1_on_circle(phi, beta)).epsilon(1e-12));
  }
}

TEST_CASE("second-neighbour b1 is the constant -phi_2") {
  const LaurentPoly b1 = build_b1(Coefficients({1.0, -0.25}));
  CHECK(b1.bandwidth() == 0);
  CHECK(b1.coeff(0) == doctest::Approx(0.25));
  const GrfFactorization f = grf_factorize(b1);
  CHECK(f.sigma == 1);
  CHECK(f.p1.coeff(0) == doctest::Approx(0.5));
  CHECK(f.beta0 == doctest::Approx(0.5));
  CHECK(f.beta1 == doctest::Approx(0.5));

  const GrfFactorization g = grf_factorize(build_b1(Coefficients({1.0, 0.3})));
  CHECK(g.sigma == -1);
  CHECK(g.p1.coeff(0) == doctest::Approx(std::sqrt(0.3)));
}

TEST_CASE("polynomial roots from the balanced companion matrix") {
  // (t - 2)(t + 0.5)(t^2 + 1)
  const auto a = oracle::poly_mul(oracle::poly_mul({-2.0, 1.0}, {0.5, 1.0}), {1.0, 0.0, 1.0});
  const auto roots = polynomial_roots(a);
  CHECK(roots.size() == 4);
  const std::vector<std::complex<double>> expected{{2.0, 0.0}, {-0.5, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
  for (const auto& z : expected) {
    double best = 1e300;
    for (const auto& r : roots) best = std::min(best, std::abs(r - z));
    CHECK(best < 1e-12);
  }
  const auto with_zero = polynomial_roots({0.0, 0.0, -1.0, 1.0});
  CHECK(with_zero.size() == 3);
  CHECK(std::count(with_zero.begin(), with_zero.end(), std::complex<double>(0.0, 0.0)) == 2);
  CHECK_THROWS_AS(polynomial_roots({0.0, 0.0}), Error);
}

TEST_CASE("GRF factorization reproduces b1 for random nonpositive models") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int range = 2 + trial % 5;
    const Coefficients c(oracle::random_nonpositive_phi(rng, range, 0.5));
    const LaurentPoly b1 = build_b1(c);
    const GrfFactorization f = grf_factorize(b1);
    CHECK(f.sigma == 1);
    CHECK(grf_reconstruction_error(f, b1) <= 1e-10);
    CHECK(f.p1.lo() == 0);
    CHECK(f.p1.hi() == range - 2);
    CHECK(f.p1.coeff(f.p1.hi()) > 0.0);
    // Roots of p1 lie strictly inside the unit disk.
    if (f.p1.hi() > 0) {
      for (const auto& z : polynomial_roots(f.p1.coeffs())) CHECK(std::abs(z) < 1.0);
    }
  }
}

TEST_CASE("factorization errors") {
  // b1 = 2 - t - 1/t vanishes at t = 1.
  CHECK(code_of([] { (void)grf_factorize(laplacian_symbol()); }) == ErrorCode::factorization_degeneracy);
  // cos(theta) changes sign.
  CHECK(code_of([] { (void)grf_factorize(LaurentPoly(-1, {0.5, 0.0, 0.5})); }) == ErrorCode::mixed_sign);
  CHECK(code_of([] { (void)grf_factorize(LaurentPoly()); }) == ErrorCode::factorization_degeneracy);
  CHECK(code_of([] { (void)grf_factorize(LaurentPoly(-1, {1.0, 3.0, 0.5})); }) == ErrorCode::precondition);
  // Mixed signs in the coefficients may still give a definite b1.
  const Coefficients c({1.0, -0.2, 0.3});
  CHECK(code_of([&] { (void)beta_bounds_closed_form(c); }) == ErrorCode::precondition);
}

TEST_CASE("closed-form beta bounds match grid extrema") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Coefficients c(oracle::random_nonpositive_phi(rng, 3 + trial % 4, 0.5));
    const BetaBounds closed = beta_bounds_closed_form(c);
    const GridBetaBounds grid = beta_bounds_numeric(build_b1(c), 4096);
    CHECK(grid.beta0 * grid.beta0 == doctest::Approx(closed.beta0 * closed.beta0).epsilon(1e-6));
    CHECK(grid.beta1 * grid.beta1 == doctest::Approx(closed.beta1 * closed.beta1).epsilon(1e-6));
    CHECK(grid.argmin == doctest::Approx(std::numbers::pi));
    CHECK(grid.argmax == doctest::Approx(0.0));
  }
  CHECK_THROWS_AS(beta_bounds_numeric(LaurentPoly::constant(1.0), 100), Error);
}

TEST_CASE("closed-form beta for a single second-neighbour term") {
  const BetaBounds b = beta_bounds_closed_form(Coefficients({1.0, -0.4}));
  // (2*4 + 1 - 1)/8 = 1 and 4*3/12 = 1
  CHECK(b.beta0 == doctest::Approx(std::sqrt(0.4)));
  CHECK(b.beta1 == doctest::Approx(std::sqrt(0.4)));
}

TEST_CASE("f_r values, limits and domain") {
  for (double beta : {0.1, 0.5, 1.0, 1.5}) CHECK(eval_f_r(2, beta) == doctest::Approx(4.0));
  for (int r = 2; r <= 8; ++r) {
    const double at_half_pi = r * r - (1.0 - std::pow(-1.0, r)) / 2.0;
    CHECK(eval_f_r(r, std::numbers::pi / 2) == doctest::Approx(at_half_pi));
    CHECK(eval_f_r(r, 1e-3) == doctest::Approx(r * r * (r * r - 1.0) / 3.0).epsilon(1e-4));
    CHECK(eval_f_r(r, 0.77) == doctest::Approx(oracle::f_r(r, 0.77)));
  }
  CHECK_THROWS_AS(eval_f_r(1, 0.5), Error);
  CHECK_THROWS_AS(eval_f_r(3, 0.0), Error);
  CHECK_THROWS_AS(eval_f_r(3, 2.0), Error);
}
