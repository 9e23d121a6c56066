#pragma once

#include <complex>
#include <vector>

#include "qcspectra/chain_model.hpp"
#include "qcspectra/laurent_poly.hpp"

namespace qcspectra {

/// Real factor p1 of b1 with  sigma * p1(t) p1(1/t) = b1(t), plus the circle
/// bounds  beta0^2 <= |b1(t)| <= beta1^2.
struct GrfFactorization {
  LaurentPoly p1;  // ordinary polynomial, positive leading coefficient
  int sigma = 1;
  double beta0 = 0.0;
  double beta1 = 0.0;
};

struct BetaBounds {
  double beta0 = 0.0;
  double beta1 = 0.0;
};

struct GridBetaBounds {
  double beta0 = 0.0;
  double beta1 = 0.0;
  double argmin = 0.0;  // theta of the minimiser, t = exp(i theta)
  double argmax = 0.0;
};

/// Symbol of L^a - L^c:
///   b(t) = sum_{r>=2} phi_r [(t^r - 1)(t^-r - 1) - r^2 (t - 1)(t^-1 - 1)].
LaurentPoly build_b(const Coefficients& coeffs);
inline LaurentPoly build_b(const ChainModel& model) { return build_b(model.coefficients()); }

/// b(t) / [(t - 1)(t^-1 - 1)]^2, by two exact divisions.
LaurentPoly build_b1(const Coefficients& coeffs);
inline LaurentPoly build_b1(const ChainModel& model) { return build_b1(model.coefficients()); }

/// Roots of sum_k c_k t^k (ascending coefficients) as eigenvalues of the
/// balanced companion matrix.
std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& ascending);

/// Spectral factorization of a palindromic b1 that keeps one sign on the unit
/// circle. p1 collects the roots of t^m b1(t) strictly inside the unit disk.
GrfFactorization grf_factorize(const LaurentPoly& b1);

/// max |sigma p1(t) p1(1/t) - b1|  relative to max |b1| (coefficientwise).
double grf_reconstruction_error(const GrfFactorization& f, const LaurentPoly& b1);

/// Sharp bounds for phi''_{rF} <= 0 (r >= 2), phi''_{RF} < 0:
///   beta0^2 = sum (-phi_r)(2r^2 + (-1)^r - 1)/8   attained at t = -1,
///   beta1^2 = sum (-phi_r) r^2 (r^2 - 1)/12       attained at t = 1.
BetaBounds beta_bounds_closed_form(const Coefficients& coeffs);
inline BetaBounds beta_bounds_closed_form(const ChainModel& model) {
  return beta_bounds_closed_form(model.coefficients());
}

/// Extrema of |b1(exp(i theta))| over theta = 2 pi j / grid.
GridBetaBounds beta_bounds_numeric(const LaurentPoly& b1, int grid);

/// f_r(beta) = (r^2 - sin^2(r beta)/sin^2 beta) / sin^2 beta on (0, pi/2].
double eval_f_r(int r, double beta);

}  // namespace qcspectra
