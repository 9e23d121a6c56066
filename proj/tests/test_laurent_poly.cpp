#include "doctest.h"
#include "oracles.hpp"
#include "qcspectra/errors.hpp"
#include "qcspectra/laurent_poly.hpp"

using qcspectra::LaurentPoly;

TEST_CASE("construction trims exact zeros at both ends") {
  const LaurentPoly p(-2, {0.0, 0.0, 1.0, 2.0, 0.0});
  CHECK(p.lo() == 0);
  CHECK(p.hi() == 1);
  CHECK(p.coeff(0) == 1.0);
  CHECK(p.coeff(1) == 2.0);
  CHECK(p.coeff(5) == 0.0);
  CHECK(LaurentPoly(3, {0.0, 0.0}).is_zero());
  CHECK(LaurentPoly(-3, {1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0}).bandwidth() == 3);
}

TEST_CASE("evaluation at real points and on the unit circle") {
  const LaurentPoly p(-1, {1.0, 2.0, 3.0});  // t^-1 + 2 + 3t
  CHECK(p(2.0) == doctest::Approx(0.5 + 2.0 + 6.0));
  const auto z = p.on_circle(0.3);
  const std::complex<double> t = std::polar(1.0, 0.3);
  CHECK(std::abs(z - (1.0 / t + 2.0 + 3.0 * t)) < 1e-14);
}

TEST_CASE("multiplication agrees with the coefficient convolution") {
  const std::vector<double> a{1.0, -2.0, 0.5, 3.0};
  const std::vector<double> b{0.25, 4.0, -1.0};
  const LaurentPoly pa(-2, a);
  const LaurentPoly pb(1, b);
  const LaurentPoly prod = pa * pb;
  const auto ref = oracle::poly_mul(a, b);
  CHECK(prod.lo() == -1);
  for (std::size_t k = 0; k < ref.size(); ++k) CHECK(prod.coeff(-1 + static_cast<int>(k)) == doctest::Approx(ref[k]));
}

TEST_CASE("exact division recovers the factor") {
  const LaurentPoly q(-2, {1.0, -3.0, 0.5, 2.0});
  const LaurentPoly d = qcspectra::laplacian_symbol();
  const LaurentPoly back = qcspectra::laurent_div_exact(q * d, d);
  CHECK(qcspectra::max_coeff_distance(back, q) < 1e-13);
}

TEST_CASE("inexact division reports the remainder") {
  const LaurentPoly num(0, {1.0, 0.0, 1.0});  // 1 + t^2 is not divisible by 1 - t
  const LaurentPoly den(0, {1.0, -1.0});
  try {
    (void)qcspectra::laurent_div_exact(num, den);
    FAIL("expected InexactDivisionError");
  } catch (const qcspectra::InexactDivisionError& e) {
    CHECK(e.code() == qcspectra::ErrorCode::inexact_division);
    CHECK(e.remainder_norm() > 0.1);
  }
  CHECK_THROWS_AS(qcspectra::laurent_div_exact(num, LaurentPoly()), qcspectra::Error);
}

TEST_CASE("reflection and palindromic symmetry") {
  const LaurentPoly p(-1, {2.0, 5.0, 7.0});
  const LaurentPoly r = p.reflected();
  CHECK(r.coeff(1) == 2.0);
  CHECK(r.coeff(-1) == 7.0);
  CHECK_FALSE(p.is_palindromic());
  CHECK(qcspectra::laplacian_symbol().is_palindromic());
  CHECK(LaurentPoly(-1, {1.0, 0.0, 1.0 + 1e-14}).is_palindromic(1e-12));
}

TEST_CASE("difference and Laplacian symbols") {
  const LaurentPoly pd = qcspectra::difference_symbol();
  CHECK(pd.coeff(0) == 1.0);
  CHECK(pd.coeff(-1) == -1.0);
  // p_D(t) p_D(1/t) = p_L(t)
  CHECK(qcspectra::max_coeff_distance(pd * pd.reflected(), qcspectra::laplacian_symbol()) == 0.0);
}

TEST_CASE("arithmetic identities") {
  const LaurentPoly p(-1, {1.0, 2.0});
  const LaurentPoly q(0, {3.0, 0.0, -1.0});
  CHECK((p - p).is_zero());
  CHECK((p + q).coeff(0) == 5.0);
  CHECK((2.0 * q).coeff(2) == -2.0);
  CHECK((-q).coeff(0) == -3.0);
  CHECK(q.max_abs_coeff() == 3.0);
}
