#include "qcspectra/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qcspectra/errors.hpp"

namespace qcspectra {

namespace {

constexpr double kUnitCircleTol = 1e-8;
constexpr int kSignScanPoints = 2048;
constexpr int kBoundGrid = 4096;

// Parlett-Reinsch balancing by powers of two.
void balance(Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  constexpr double radix = 2.0;
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

// Minimise or maximise theta -> sign * |b1(e^{i theta})| near a grid point.
double refine_extremum(const LaurentPoly& b1, double theta, double half_width, double sign) {
  auto g = [&](double t) { return sign * std::abs(b1.on_circle(t).real()); };
  constexpr double inv_phi = 0.6180339887498949;
  double lo = theta - half_width;
  double hi = theta + half_width;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = g(x1);
  double f2 = g(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = g(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = g(x2);
    }
  }
  return std::min({sign * g(theta), sign * f1, sign * f2}, [&](double a, double b) {
    return sign * a < sign * b;
  });
}

}  // namespace

LaurentPoly build_b(const Coefficients& coeffs) {
  const LaurentPoly lap = laplacian_symbol();  // (t - 1)(t^-1 - 1)
  LaurentPoly b;
  for (int r = 2; r <= coeffs.range(); ++r) {
    const LaurentPoly tr = LaurentPoly::monomial(r) - LaurentPoly::constant(1.0);
    const LaurentPoly tmr = LaurentPoly::monomial(-r) - LaurentPoly::constant(1.0);
    const LaurentPoly term = laurent_mul(tr, tmr) - static_cast<double>(r * r) * lap;
    b = b + coeffs.phi(r) * term;
  }
  return b;
}

LaurentPoly build_b1(const Coefficients& coeffs) {
  const LaurentPoly lap = laplacian_symbol();
  LaurentPoly q = laurent_div_exact(laurent_div_exact(build_b(coeffs), lap), lap);
  // The quotient is palindromic in exact arithmetic; remove rounding asymmetry.
  return 0.5 * (q + q.reflected());
}

std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& ascending) {
  std::size_t deg = ascending.size();
  while (deg > 0 && ascending[deg - 1] == 0.0) --deg;
  if (deg == 0) throw Error(ErrorCode::domain, "the zero polynomial has no isolated roots");
  --deg;
  std::vector<std::complex<double>> roots;
  // Zero roots from vanishing low-order coefficients.
  std::size_t shift = 0;
  while (shift < deg && ascending[shift] == 0.0) ++shift;
  roots.assign(shift, 0.0);
  const std::size_t d = deg - shift;
  if (d == 0) return roots;

  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  const double lead = ascending[deg];
  for (std::size_t i = 0; i < d; ++i) {
    c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d - 1)) = -ascending[shift + i] / lead;
    if (i + 1 < d) c(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = 1.0;
  }
  balance(c);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(c, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::solver_failure, "companion eigenvalue iteration did not converge");
  }
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) roots.push_back(solver.eigenvalues()[i]);
  return roots;
}

GrfFactorization grf_factorize(const LaurentPoly& b1) {
  if (b1.is_zero()) {
    throw Error(ErrorCode::factorization_degeneracy, "b1 vanishes identically on the unit circle");
  }
  if (!b1.is_palindromic(1e-10) || b1.lo() != -b1.hi()) {
    throw Error(ErrorCode::precondition, "b1 must satisfy b1(t) = b1(1/t)");
  }

  double vmin = std::numeric_limits<double>::infinity();
  double vmax = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < kSignScanPoints; ++j) {
    const double v = b1.on_circle(2.0 * std::numbers::pi * j / kSignScanPoints).real();
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  if (vmin < 0.0 && vmax > 0.0) {
    std::ostringstream msg;
    msg << "b1 changes sign on the unit circle (range [" << vmin << ", " << vmax << "])";
    throw Error(ErrorCode::mixed_sign, msg.str());
  }

  GrfFactorization out;
  const int m = b1.hi();
  if (m == 0) {
    const double c = b1.coeff(0);
    out.sigma = c > 0.0 ? 1 : -1;
    out.p1 = LaurentPoly::constant(std::sqrt(std::abs(c)));
    out.beta0 = out.beta1 = std::sqrt(std::abs(c));
    return out;
  }

  // t^m b1(t) has ascending coefficients b1_{-m} .. b1_{m}.
  const std::vector<std::complex<double>> roots = polynomial_roots(b1.coeffs());
  std::vector<std::complex<double>> inside;
  for (const auto& z : roots) {
    const double gap = std::abs(std::abs(z) - 1.0);
    if (gap < kUnitCircleTol) {
      std::ostringstream msg;
      msg << "b1 has a root on the unit circle at " << z;
      throw Error(ErrorCode::factorization_degeneracy, msg.str());
    }
    if (std::abs(z) < 1.0) inside.push_back(z);
  }
  if (static_cast<int>(inside.size()) != m) {
    throw Error(ErrorCode::factorization_degeneracy, "root count inside the unit disk does not match the degree");
  }

  // Enforce exact conjugate symmetry so that p1 has real coefficients.
  std::vector<bool> used(inside.size(), false);
  std::vector<std::complex<double>> sym;
  for (std::size_t i = 0; i < inside.size(); ++i) {
    if (used[i] || inside[i].imag() <= 0.0) continue;
    std::size_t best = inside.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < inside.size(); ++j) {
      if (used[j] || j == i) continue;
      const double d = std::abs(inside[j] - std::conj(inside[i]));
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best < inside.size() && best_d <= 1e-6 * std::max(1.0, std::abs(inside[i]))) {
      used[i] = used[best] = true;
      const std::complex<double> z = 0.5 * (inside[i] + std::conj(inside[best]));
      sym.push_back(z);
      sym.push_back(std::conj(z));
    }
  }
  for (std::size_t i = 0; i < inside.size(); ++i) {
    if (!used[i]) sym.emplace_back(inside[i].real(), 0.0);
  }

  std::vector<std::complex<double>> monic{1.0};
  for (const auto& z : sym) {
    std::vector<std::complex<double>> next(monic.size() + 1, 0.0);
    for (std::size_t k = 0; k < monic.size(); ++k) {
      next[k + 1] += monic[k];
      next[k] -= z * monic[k];
    }
    monic = std::move(next);
  }
  std::vector<double> real_monic;
  for (const auto& c : monic) real_monic.push_back(c.real());
  const LaurentPoly p_hat(0, real_monic);

  const double p_at_one = p_hat(1.0);
  double alpha2;
  if (std::abs(p_at_one) > 1e-8) {
    alpha2 = b1(1.0) / (p_at_one * p_at_one);
  } else {
    // Top coefficient of p_hat(t) p_hat(1/t) is p_hat(0).
    alpha2 = b1.coeff(m) / p_hat.coeff(0);
  }
  out.sigma = alpha2 > 0.0 ? 1 : -1;
  out.p1 = std::sqrt(std::abs(alpha2)) * p_hat;

  const GridBetaBounds grid = beta_bounds_numeric(b1, kBoundGrid);
  const double h = 2.0 * std::numbers::pi / kBoundGrid;
  const double vlo = refine_extremum(b1, grid.argmin, h, 1.0);
  const double vhi = refine_extremum(b1, grid.argmax, h, -1.0);
  out.beta0 = std::sqrt(std::min(vlo, grid.beta0 * grid.beta0));
  out.beta1 = std::sqrt(std::max(vhi, grid.beta1 * grid.beta1));
  return out;
}

double grf_reconstruction_error(const GrfFactorization& f, const LaurentPoly& b1) {
  const LaurentPoly rebuilt = static_cast<double>(f.sigma) * laurent_mul(f.p1, f.p1.reflected());
  const double scale = b1.max_abs_coeff();
  return max_coeff_distance(rebuilt, b1) / (scale > 0.0 ? scale : 1.0);
}

BetaBounds beta_bounds_closed_form(const Coefficients& coeffs) {
  if (!coeffs.has_nonpositive_tail()) {
    throw Error(ErrorCode::precondition,
                "closed-form beta bounds need phi''_r <= 0 for r >= 2 and phi''_R < 0");
  }
  double lo = 0.0;
  double hi = 0.0;
  for (int r = 2; r <= coeffs.range(); ++r) {
    const double w = -coeffs.phi(r);
    const double rr = static_cast<double>(r) * r;
    const double parity = (r % 2 == 0) ? 1.0 : -1.0;
    lo += w * (2.0 * rr + parity - 1.0) / 8.0;
    hi += w * rr * (rr - 1.0) / 12.0;
  }
  return {std::sqrt(lo), std::sqrt(hi)};
}

GridBetaBounds beta_bounds_numeric(const LaurentPoly& b1, int grid) {
  if (grid < 256) throw Error(ErrorCode::precondition, "beta grid needs at least 256 points");
  GridBetaBounds out;
  double vmin = std::numeric_limits<double>::infinity();
  double vmax = -1.0;
  for (int j = 0; j < grid; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / grid;
    const double v = std::abs(b1.on_circle(theta).real());
    if (v < vmin) {
      vmin = v;
      out.argmin = theta;
    }
    if (v > vmax) {
      vmax = v;
      out.argmax = theta;
    }
  }
  out.beta0 = std::sqrt(vmin);
  out.beta1 = std::sqrt(vmax);
  return out;
}

double eval_f_r(int r, double beta) {
  if (r < 2) throw Error(ErrorCode::domain, "f_r needs r >= 2");
  if (!(beta > 0.0) || beta > 0.5 * std::numbers::pi * (1.0 + 1e-15)) {
    throw Error(ErrorCode::domain, "f_r is defined for 0 < beta <= pi/2");
  }
  const double s = std::sin(beta);
  const double sr = std::sin(r * beta);
  const double s2 = s * s;
  return (static_cast<double>(r) * r - sr * sr / s2) / s2;
}

}  // namespace qcspectra
