#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace qcspectra {

/// Real Laurent polynomial  sum_k c_k t^k  for k = lo .. lo + size - 1.
///
/// Always stored in canonical trimmed form: the lowest and highest stored
/// coefficients are nonzero. The zero polynomial has no coefficients.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(int lo, std::vector<double> coeffs);
  LaurentPoly(int lo, std::initializer_list<double> coeffs)
      : LaurentPoly(lo, std::vector<double>(coeffs)) {}

  static LaurentPoly constant(double c) { return LaurentPoly(0, {c}); }
  static LaurentPoly monomial(int k, double c = 1.0) { return LaurentPoly(k, {c}); }

  bool is_zero() const { return coeffs_.empty(); }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(coeffs_.size()) - 1; }
  /// max(|lo|, |hi|); zero for constants.
  int bandwidth() const;
  const std::vector<double>& coeffs() const { return coeffs_; }

  /// Coefficient of t^k (zero outside the stored range).
  double coeff(int k) const;

  std::complex<double> operator()(std::complex<double> t) const;
  double operator()(double t) const;
  /// Value at t = exp(i theta).
  std::complex<double> on_circle(double theta) const;

  /// p(1/t).
  LaurentPoly reflected() const;
  /// Symmetric about exponent 0, i.e. p(t) = p(1/t), up to a relative tolerance.
  bool is_palindromic(double rel_tol = 0.0) const;

  double max_abs_coeff() const;

  LaurentPoly operator-() const;
  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(double s, const LaurentPoly& p);

 private:
  void trim();

  int lo_ = 0;
  std::vector<double> coeffs_;
};

LaurentPoly laurent_mul(const LaurentPoly& a, const LaurentPoly& b);
inline LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  return laurent_mul(a, b);
}

/// Exact quotient num / den. Throws InexactDivisionError when the remainder
/// exceeds rel_tol relative to the size of num.
LaurentPoly laurent_div_exact(const LaurentPoly& num, const LaurentPoly& den,
                              double rel_tol = 1e-12);

/// Max-coefficient distance between two Laurent polynomials.
double max_coeff_distance(const LaurentPoly& a, const LaurentPoly& b);

/// p_D(t) = 1 - 1/t, the symbol of the backward difference.
LaurentPoly difference_symbol();
/// p_L(t) = -t + 2 - 1/t, the symbol of the negative Laplacian.
LaurentPoly laplacian_symbol();

}  // namespace qcspectra
