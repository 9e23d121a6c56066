#include "qcspectra/laurent_poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcspectra/errors.hpp"

namespace qcspectra {

LaurentPoly::LaurentPoly(int lo, std::vector<double> coeffs)
    : lo_(lo), coeffs_(std::move(coeffs)) {
  trim();
}

void LaurentPoly::trim() {
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(),
                            [](double c) { return c != 0.0; });
  if (first == coeffs_.end()) {
    coeffs_.clear();
    lo_ = 0;
    return;
  }
  auto last = std::find_if(coeffs_.rbegin(), coeffs_.rend(),
                           [](double c) { return c != 0.0; });
  lo_ += static_cast<int>(first - coeffs_.begin());
  coeffs_ = std::vector<double>(first, last.base());
}

int LaurentPoly::bandwidth() const {
  if (is_zero()) return 0;
  return std::max(std::abs(lo()), std::abs(hi()));
}

double LaurentPoly::coeff(int k) const {
  if (is_zero() || k < lo() || k > hi()) return 0.0;
  return coeffs_[static_cast<std::size_t>(k - lo_)];
}

std::complex<double> LaurentPoly::operator()(std::complex<double> t) const {
  if (is_zero()) return 0.0;
  // Horner in t over the stored block, then shift by t^lo.
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc * std::pow(t, lo_);
}

double LaurentPoly::operator()(double t) const {
  if (is_zero()) return 0.0;
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc * std::pow(t, lo_);
}

std::complex<double> LaurentPoly::on_circle(double theta) const {
  std::complex<double> acc = 0.0;
  for (int k = lo(); k <= hi() && !is_zero(); ++k) {
    acc += coeff(k) * std::polar(1.0, k * theta);
  }
  return acc;
}

LaurentPoly LaurentPoly::reflected() const {
  std::vector<double> rev(coeffs_.rbegin(), coeffs_.rend());
  return LaurentPoly(-hi(), std::move(rev));
}

bool LaurentPoly::is_palindromic(double rel_tol) const {
  if (is_zero()) return true;
  const double scale = max_abs_coeff();
  const int bw = bandwidth();
  for (int k = 1; k <= bw; ++k) {
    if (std::abs(coeff(k) - coeff(-k)) > rel_tol * scale) return false;
  }
  return true;
}

double LaurentPoly::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

LaurentPoly LaurentPoly::operator-() const { return -1.0 * *this; }

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const int lo = std::min(a.lo(), b.lo());
  const int hi = std::max(a.hi(), b.hi());
  std::vector<double> c(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (int k = lo; k <= hi; ++k) c[static_cast<std::size_t>(k - lo)] = a.coeff(k) + b.coeff(k);
  return LaurentPoly(lo, std::move(c));
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

LaurentPoly operator*(double s, const LaurentPoly& p) {
  std::vector<double> c = p.coeffs_;
  for (double& x : c) x *= s;
  return LaurentPoly(p.lo_, std::move(c));
}

LaurentPoly laurent_mul(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  std::vector<double> c(ca.size() + cb.size() - 1, 0.0);
  for (std::size_t i = 0; i < ca.size(); ++i) {
    for (std::size_t j = 0; j < cb.size(); ++j) c[i + j] += ca[i] * cb[j];
  }
  return LaurentPoly(a.lo() + b.lo(), std::move(c));
}

LaurentPoly laurent_div_exact(const LaurentPoly& num, const LaurentPoly& den,
                              double rel_tol) {
  if (den.is_zero()) throw Error(ErrorCode::domain, "division by the zero Laurent polynomial");
  if (num.is_zero()) return {};

  // Both operands are trimmed, so num = t^lo_n N(t) and den = t^lo_d D(t)
  // with N(0), D(0) != 0; divide the ordinary polynomials from the top.
  std::vector<double> rem = num.coeffs();
  const auto& d = den.coeffs();
  const std::size_t dn = rem.size() - 1;
  const std::size_t dd = d.size() - 1;

  std::vector<double> q;
  if (dn >= dd) {
    q.assign(dn - dd + 1, 0.0);
    for (std::size_t k = dn - dd + 1; k-- > 0;) {
      const double c = rem[k + dd] / d[dd];
      q[k] = c;
      for (std::size_t j = 0; j <= dd; ++j) rem[k + j] -= c * d[j];
    }
  }

  double q_max = 0.0;
  for (double c : q) q_max = std::max(q_max, std::abs(c));
  double rem_norm = 0.0;
  for (double c : rem) rem_norm = std::max(rem_norm, std::abs(c));
  const double scale = std::max(num.max_abs_coeff(), q_max * den.max_abs_coeff());
  if (q.empty() || rem_norm > rel_tol * scale) {
    std::ostringstream msg;
    msg << "Laurent division is not exact: remainder norm " << rem_norm;
    throw InexactDivisionError(rem_norm, msg.str());
  }
  return LaurentPoly(num.lo() - den.lo(), std::move(q));
}

double max_coeff_distance(const LaurentPoly& a, const LaurentPoly& b) {
  return (a - b).max_abs_coeff();
}

LaurentPoly difference_symbol() { return LaurentPoly(-1, {-1.0, 1.0}); }

LaurentPoly laplacian_symbol() { return LaurentPoly(-1, {-1.0, 2.0, -1.0}); }

}  // namespace qcspectra
