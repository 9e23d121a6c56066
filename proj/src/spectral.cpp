#include "qcspectra/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "qcspectra/errors.hpp"
#include "qcspectra/qc_operators.hpp"

namespace qcspectra {

namespace {

constexpr double kAbsFloor = 1e-12;

bool complex_less(const std::complex<double>& a, const std::complex<double>& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

double max_imag_of(const std::vector<std::complex<double>>& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z.imag()));
  return m;
}

double spectral_radius(const std::vector<std::complex<double>>& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

Eigen::VectorXd real_parts(const std::vector<std::complex<double>>& v) {
  Eigen::VectorXd r(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) r[static_cast<Eigen::Index>(i)] = v[i].real();
  return r;
}

double relative_residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& v, const Eigen::VectorXd& lambda) {
  const Eigen::MatrixXd r = a * v - v * lambda.asDiagonal();
  const double scale = operator_norm(a) * operator_norm(v);
  return operator_norm(r) / std::max(scale, kAbsFloor);
}

void require_positive_w2(const ChainModel& model) {
  if (!(model.w2() > 0.0)) throw Error(ErrorCode::precondition, "W'' must be positive");
}

Eigen::MatrixXd circulant_inverse(const Eigen::MatrixXd& y) { return y.partialPivLu().inverse(); }

}  // namespace

BoundCheck check_le(std::string name, double measured, double limit) {
  return {std::move(name), measured <= limit, measured, limit, limit - measured};
}

BoundCheck check_ge(std::string name, double measured, double limit) {
  return {std::move(name), measured >= limit, measured, limit, measured - limit};
}

bool SpectralReport::all_passed() const {
  return std::all_of(bound_checks.begin(), bound_checks.end(), [](const BoundCheck& c) { return c.passed; });
}

const BoundCheck& SpectralReport::check(const std::string& name) const {
  for (const auto& c : bound_checks) {
    if (c.name == name) return c;
  }
  throw Error(ErrorCode::domain, "no bound check named " + name);
}

Eigen::VectorXd spectrum_sym(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::size_mismatch, "matrix is not square");
  const double scale = std::max(m.cwiseAbs().maxCoeff(), kAbsFloor);
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale) {
    throw Error(ErrorCode::asymmetric_input, "symmetric eigensolver called on a nonsymmetric matrix");
  }
  const Eigen::MatrixXd s = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::solver_failure, "symmetric eigensolver failed");
  return solver.eigenvalues();
}

GeneralEigen spectrum_general(const Eigen::MatrixXd& m, bool with_vectors) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::size_mismatch, "matrix is not square");
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, with_vectors);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::solver_failure, "general eigensolver failed");
  GeneralEigen out;
  out.values = solver.eigenvalues();
  if (with_vectors) out.vectors = solver.eigenvectors();
  return out;
}

std::vector<std::complex<double>> sorted_spectrum(const Eigen::MatrixXd& m) {
  const GeneralEigen e = spectrum_general(m, false);
  std::vector<std::complex<double>> v(e.values.data(), e.values.data() + e.values.size());
  std::sort(v.begin(), v.end(), complex_less);
  return v;
}

double cond(const Eigen::MatrixXd& m) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  const double smin = s[s.size() - 1];
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return s[0] / smin;
}

double operator_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()[0];
}

SpectralReport check_similarity_r2(const ChainModel& model, const RegionMask& mask, double tol_scale) {
  const Eigen::MatrixXd qnl = assemble_qnl(model, mask).entries;
  const Eigen::MatrixXd q0 = assemble_qcf0(model, mask).entries;
  const Eigen::MatrixXd l1 = modified_laplacian(model.n()).entries;

  SpectralReport rep;
  const double comm = operator_norm(l1 * q0 - qnl * l1) / std::max(operator_norm(qnl) * operator_norm(l1), kAbsFloor);
  rep.bound_checks.push_back(check_le("intertwining_residual", comm, 1e-10 * tol_scale));

  rep.eigenvalues = sorted_spectrum(q0);
  rep.max_imag = max_imag_of(rep.eigenvalues);
  const double rho = std::max(spectral_radius(rep.eigenvalues), kAbsFloor);
  const Eigen::VectorXd ref = spectrum_sym(qnl);
  const double dev = (real_parts(rep.eigenvalues) - ref).cwiseAbs().maxCoeff();
  rep.bound_checks.push_back(check_le("imaginary_parts", rep.max_imag / rho, 1e-8 * tol_scale));
  rep.bound_checks.push_back(check_le("spectrum_deviation", dev / rho, 1e-8 * tol_scale));
  return rep;
}

Diagonalization build_vqcf_r2(const ChainModel& model, const RegionMask& mask) {
  require_positive_w2(model);
  const int n = model.n();
  const Eigen::MatrixXd qnl = assemble_qnl(model, mask).entries;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(qnl);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::solver_failure, "symmetric eigensolver failed");

  const Eigen::MatrixXd l = assemble_laplacian(n).entries;
  const Eigen::MatrixXd pu = project_mean_zero(n).entries;
  const Eigen::MatrixXd x = mask_operator(mask).entries;
  const Eigen::MatrixXd a = model.w2() * Eigen::MatrixXd::Identity(n, n) - model.phi(2) * (pu * x * l);

  Diagonalization d;
  d.vectors = a * solver.eigenvectors();
  d.eigenvalues = solver.eigenvalues();
  d.residual = relative_residual(assemble_qcf0(model, mask).entries, d.vectors, d.eigenvalues);
  d.cond = cond(d.vectors);
  return d;
}

double vqcf_r2_bound(const ChainModel& model) {
  require_positive_w2(model);
  const double alpha = model.phi(2) / model.w2();
  return (1.0 + 4.0 * std::abs(alpha)) / gamma0_closed(alpha);
}

double gamma0_closed(double alpha) {
  if (!(alpha <= 0.0)) throw Error(ErrorCode::domain, "gamma0 closed form needs alpha <= 0");
  // Same value as 1 + 8a^2 - 4 sqrt(a^2 + 4a^4), rationalised to avoid cancellation.
  const double a = std::abs(alpha);
  const double g2 = 1.0 / (1.0 + 8.0 * a * a + 4.0 * a * std::sqrt(1.0 + 4.0 * a * a));
  if (!(g2 > 0.0)) throw Error(ErrorCode::domain, "gamma0^2 is not positive");
  return std::sqrt(g2);
}

double epsilon_optimal(double alpha_tilde) {
  const double a = alpha_tilde;
  if (!(a < 1.0)) throw Error(ErrorCode::domain, "epsilon is defined for alpha_tilde < 1");
  if (a <= 0.0) return std::sqrt(a * a + a * a * a * a / 4.0) - a * a / 2.0;
  return a - a * a + std::sqrt(2.0 * (a * a - a * a * a) + a * a * a * a);
}

double gamma0_general(double alpha_tilde) {
  const double a = alpha_tilde;
  if (!(a < 1.0)) throw Error(ErrorCode::domain, "gamma0 is defined for alpha_tilde < 1");
  if (a <= 0.0) {
    const double m = std::abs(a);
    return std::sqrt(1.0 / (1.0 + m * m / 2.0 + m * std::sqrt(1.0 + m * m / 4.0)));
  }
  const double g2 = 1.0 - epsilon_optimal(a);
  if (!(g2 > 0.0)) throw Error(ErrorCode::domain, "gamma0^2 is not positive");
  return std::sqrt(g2);
}

Diagonalization build_vqcf_fr(const ChainModel& model, const RegionMask& mask) {
  return build_vqcf_fr(model, mask, factorize_model(model));
}

Diagonalization build_vqcf_fr(const ChainModel& model, const RegionMask& mask, const GrfFactorization& grf) {
  require_positive_w2(model);
  const int n = model.n();
  const Eigen::MatrixXd lsym = assemble_sym(model, mask, grf).entries;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lsym);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::solver_failure, "symmetric eigensolver failed");

  const Eigen::MatrixXd y1 = assemble_Y1(model, grf).entries;
  const Eigen::MatrixXd l = assemble_laplacian(n).entries;
  const Eigen::MatrixXd pu = project_mean_zero(n).entries;
  const Eigen::MatrixXd x = mask_operator(mask).entries;
  const Eigen::MatrixXd a =
      model.w2() * circulant_inverse(y1) + static_cast<double>(grf.sigma) * (pu * x * y1.transpose() * l);

  Diagonalization d;
  d.vectors = a * solver.eigenvectors();
  d.eigenvalues = solver.eigenvalues();
  d.residual = relative_residual(assemble_qcf0(model, mask).entries, d.vectors, d.eigenvalues);
  d.cond = cond(d.vectors);
  return d;
}

double gamma0_finite_range(const ChainModel& model, const GrfFactorization& grf) {
  require_positive_w2(model);
  const double ratio = grf.sigma * grf.beta1 * grf.beta1 / model.w2();
  if (!(ratio > -0.25)) {
    throw Error(ErrorCode::precondition, "sigma beta1^2 / W'' must exceed -1/4");
  }
  return gamma0_general(-4.0 * ratio);
}

double vqcf_fr_bound(const ChainModel& model, const GrfFactorization& grf) {
  const double w = model.w2();
  return (w / grf.beta0 + 4.0 * grf.beta1) * grf.beta1 / (w * gamma0_finite_range(model, grf));
}

SpectralReport interlacing_check(const ChainModel& model, const RegionMask& mask, double tol_scale) {
  const GrfFactorization grf = factorize_model(model);
  const Eigen::VectorXd la = spectrum_sym(assemble_atomistic(model));
  const Eigen::VectorXd lc = spectrum_sym(assemble_continuum(model));

  SpectralReport rep;
  rep.eigenvalues = sorted_spectrum(assemble_qcf0(model, mask).entries);
  rep.max_imag = max_imag_of(rep.eigenvalues);
  const Eigen::VectorXd lam = real_parts(rep.eigenvalues);
  const double scale = std::max(la.cwiseAbs().maxCoeff(), kAbsFloor);

  const Eigen::VectorXd& lower = grf.sigma > 0 ? lc : la;
  const Eigen::VectorXd& upper = grf.sigma > 0 ? la : lc;
  double violation = -std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < lam.size(); ++j) {
    violation = std::max({violation, lower[j] - lam[j], lam[j] - upper[j]});
  }
  rep.bound_checks.push_back(check_le("imaginary_parts", rep.max_imag / scale, 1e-8 * tol_scale));
  rep.bound_checks.push_back(check_le("interlacing_violation", violation / scale, 1e-9 * tol_scale));
  return rep;
}

SpectralReport eigenvalue_window_check(const ChainModel& model, const RegionMask& mask, double tol_scale) {
  require_positive_w2(model);
  if (!model.coefficients().has_nonpositive_tail()) {
    throw Error(ErrorCode::precondition, "eigenvalue window needs nonpositive coefficients beyond r = 1");
  }
  SpectralReport rep;
  rep.eigenvalues = sorted_spectrum(assemble_qcf0(model, mask).entries);
  rep.max_imag = max_imag_of(rep.eigenvalues);
  const double rho = std::max(spectral_radius(rep.eigenvalues), kAbsFloor);
  const Eigen::VectorXd lam = real_parts(rep.eigenvalues);

  const double s = std::sin(std::numbers::pi / model.n());
  const double lo = 4.0 * model.w2() * s * s;
  const double hi = 4.0 * model.phi(1);
  const double tol = 1e-9 * tol_scale * rho;
  rep.bound_checks.push_back(check_le("imaginary_parts", rep.max_imag / rho, 1e-8 * tol_scale));
  rep.bound_checks.push_back(check_le("lambda1_zero", std::abs(lam[0]) / rho, 1e-9 * tol_scale));
  rep.bound_checks.push_back(check_ge("window_lower", lam.tail(lam.size() - 1).minCoeff(), lo - tol));
  rep.bound_checks.push_back(check_le("window_upper", lam.maxCoeff(), hi + tol));
  return rep;
}

PrecAnalysis prec_eigen_analysis(const ChainModel& model, const RegionMask& mask, double tol_scale) {
  return prec_eigen_analysis(model, mask, factorize_model(model), tol_scale);
}

PrecAnalysis prec_eigen_analysis(const ChainModel& model, const RegionMask& mask, const GrfFactorization& grf,
                                 double tol_scale) {
  require_positive_w2(model);
  const int n = model.n();
  const Eigen::MatrixXd l1mh = modified_laplacian_power(n, -0.5);
  const Eigen::MatrixXd l1i = modified_laplacian_power(n, -1.0);
  const Eigen::MatrixXd lsym = assemble_sym(model, mask, grf).entries;
  Eigen::MatrixXd s = l1mh * lsym * l1mh;
  s = 0.5 * (s + s.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::solver_failure, "symmetric eigensolver failed");
  const Eigen::MatrixXd& vt = solver.eigenvectors();

  PrecAnalysis out;
  out.lambda_tilde = solver.eigenvalues();
  const Eigen::MatrixXd y1i = circulant_inverse(assemble_Y1(model, grf).entries);
  const Eigen::MatrixXd v_lr = y1i * l1i * vt;
  const Eigen::MatrixXd v_l = y1i * l1i * l1mh * vt;
  out.cond_leftright = cond(v_lr);
  out.cond_left = cond(v_l);
  out.report.cond_eigenbasis = out.cond_leftright;

  const Eigen::MatrixXd q0 = assemble_qcf0(model, mask).entries;
  const double res_lr = relative_residual(l1mh * q0 * l1mh, v_lr, out.lambda_tilde);
  const double res_l = relative_residual(l1i * q0, v_l, out.lambda_tilde);
  out.report.bound_checks.push_back(check_le("leftright_residual", res_lr, 1e-9 * tol_scale));
  out.report.bound_checks.push_back(check_le("left_residual", res_l, 1e-9 * tol_scale));

  // Rayleigh quotients of L^a against L on the nonconstant Fourier modes.
  const Eigen::MatrixXd q = real_fourier_basis(n);
  const Eigen::MatrixXd la = assemble_atomistic(model).entries;
  const Eigen::MatrixXd l = assemble_laplacian(n).entries;
  const Eigen::VectorXd num = (q.transpose() * la * q).diagonal();
  const Eigen::VectorXd den = (q.transpose() * l * q).diagonal();
  const Eigen::VectorXd ratio = num.tail(n - 1).cwiseQuotient(den.tail(n - 1));
  out.c0 = ratio.minCoeff();
  out.c1 = ratio.maxCoeff();

  // La(t)/L(t) = sum_r phi_r sin^2(r theta/2) / sin^2(theta/2), free of cancellation near theta = 0.
  auto symbol_ratio = [&](double theta) {
    const double s = std::sin(0.5 * theta);
    double v = 0.0;
    for (int r = 1; r <= model.r_cut(); ++r) {
      const double sr = std::sin(0.5 * r * theta);
      v += model.phi(r) * sr * sr / (s * s);
    }
    return v;
  };
  out.symbol_inf = symbol_ratio(1e-6);
  constexpr int grid = 4096;
  for (int j = 1; j <= grid; ++j) out.symbol_inf = std::min(out.symbol_inf, symbol_ratio(std::numbers::pi * j / grid));

  const Eigen::VectorXd& lt = out.lambda_tilde;
  const double rho = std::max(lt.cwiseAbs().maxCoeff(), kAbsFloor);
  const double w = model.w2();
  const double tol = 1e-9 * tol_scale * rho;
  out.report.bound_checks.push_back(check_le("lambda1_zero", std::abs(lt[0]) / rho, 1e-9 * tol_scale));
  out.report.bound_checks.push_back(check_ge("window_lower", lt.tail(n - 1).minCoeff(), std::min(out.c0, w) - tol));
  out.report.bound_checks.push_back(check_le("window_upper", lt.maxCoeff(), std::max(out.c1, w) + tol));
  if (model.coefficients().has_nonpositive_tail()) {
    const double wtol = 1e-9 * tol_scale * std::abs(w);
    out.report.bound_checks.push_back(check_ge("c0_at_least_w2", out.c0, w - wtol));
    out.report.bound_checks.push_back(check_le("symbol_inf_minus_w2", std::abs(out.symbol_inf - w), wtol));
  }
  for (Eigen::Index i = 0; i < lt.size(); ++i) out.report.eigenvalues.emplace_back(lt[i], 0.0);
  return out;
}

double u22_stability(const ChainModel& model, const RegionMask& mask) {
  require_positive_w2(model);
  const int n = model.n();
  const Eigen::MatrixXd q = mean_zero_basis(n);
  const Eigen::MatrixXd reduced =
      q.transpose() * assemble_qcf0(model, mask).entries * modified_laplacian_power(n, -1.0) * q;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(reduced);
  const auto& s = svd.singularValues();
  const double smin = s[s.size() - 1];
  if (!(smin > 1e-14 * s[0])) {
    throw Error(ErrorCode::instability, "L^qcf0 is singular on the mean-zero subspace");
  }
  return 1.0 / smin;
}

double u22_bound(const ChainModel& model, const GrfFactorization& grf) {
  return 1.0 / (model.w2() * gamma0_finite_range(model, grf));
}

}  // namespace qcspectra
