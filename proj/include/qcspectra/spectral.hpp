#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qcspectra/chain_model.hpp"
#include "qcspectra/laurent.hpp"
#include "qcspectra/periodic_core.hpp"

namespace qcspectra {

/// One named inequality. margin > 0 means the check passed with room to spare.
struct BoundCheck {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double limit = 0.0;
  double margin = 0.0;
};

BoundCheck check_le(std::string name, double measured, double limit);
BoundCheck check_ge(std::string name, double measured, double limit);

struct SpectralReport {
  std::vector<std::complex<double>> eigenvalues;  // by real part, then imaginary part
  double max_imag = 0.0;
  std::optional<double> cond_eigenbasis;
  std::vector<BoundCheck> bound_checks;

  bool all_passed() const;
  const BoundCheck& check(const std::string& name) const;
};

struct GeneralEigen {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;
};

/// A diagonalization  A V = V diag(eigenvalues)  with its relative residual
/// ||A V - V Lambda|| / (||A|| ||V||) and cond(V).
struct Diagonalization {
  Eigen::MatrixXd vectors;
  Eigen::VectorXd eigenvalues;
  double residual = 0.0;
  double cond = 0.0;
};

/// Ascending eigenvalues of a symmetric matrix.
Eigen::VectorXd spectrum_sym(const Eigen::MatrixXd& m);
inline Eigen::VectorXd spectrum_sym(const DenseOperator& m) { return spectrum_sym(m.entries); }

GeneralEigen spectrum_general(const Eigen::MatrixXd& m, bool with_vectors = true);
inline GeneralEigen spectrum_general(const DenseOperator& m, bool with_vectors = true) {
  return spectrum_general(m.entries, with_vectors);
}

/// Eigenvalues of a general matrix sorted by real part then imaginary part.
std::vector<std::complex<double>> sorted_spectrum(const Eigen::MatrixXd& m);

/// Spectral-norm condition number; infinity for singular input.
double cond(const Eigen::MatrixXd& m);
double operator_norm(const Eigen::MatrixXd& m);

/// L^qcf0 and L^qnl: the intertwining identity and sorted-spectrum agreement.
SpectralReport check_similarity_r2(const ChainModel& model, const RegionMask& mask, double tol_scale = 1.0);

/// V^qcf = [W'' I - phi_2 P_U X L] V^qnl, eigenvalues of L^qnl.
Diagonalization build_vqcf_r2(const ChainModel& model, const RegionMask& mask);
/// (1 + 4|alpha|) / gamma0(alpha) with alpha = phi_2 / W''.
double vqcf_r2_bound(const ChainModel& model);

/// gamma0(alpha)^2 = 1 + 8 alpha^2 - 4 sqrt(alpha^2 + 4 alpha^4), alpha <= 0.
double gamma0_closed(double alpha);
/// Optimal epsilon in the coercivity lower bound, alpha_tilde < 1.
double epsilon_optimal(double alpha_tilde);
/// sqrt(1 - epsilon_optimal(alpha_tilde)).
double gamma0_general(double alpha_tilde);

/// V^qcf = [W'' Y1^-1 + sigma P_U X Y1^T L] V^sym, eigenvalues of L^sym.
Diagonalization build_vqcf_fr(const ChainModel& model, const RegionMask& mask);
Diagonalization build_vqcf_fr(const ChainModel& model, const RegionMask& mask, const GrfFactorization& grf);

/// gamma0 for Z = Y1, i.e. alpha_tilde = -4 sigma beta1^2 / W''.
double gamma0_finite_range(const ChainModel& model, const GrfFactorization& grf);
/// (W''/beta0 + 4 beta1) beta1 / (W'' gamma0).
double vqcf_fr_bound(const ChainModel& model, const GrfFactorization& grf);

/// lambda^c_j <= lambda_j <= lambda^a_j (reversed when sigma = -1).
SpectralReport interlacing_check(const ChainModel& model, const RegionMask& mask, double tol_scale = 1.0);

/// lambda_1 = 0 and 4 W'' sin^2(pi/N) <= lambda_j <= 4 phi_1 for j >= 2.
SpectralReport eigenvalue_window_check(const ChainModel& model, const RegionMask& mask, double tol_scale = 1.0);

struct PrecAnalysis {
  SpectralReport report;
  Eigen::VectorXd lambda_tilde;  // ascending
  double cond_leftright = 0.0;   // cond(Y1^-1 L1^-1 V~)
  double cond_left = 0.0;        // cond(Y1^-1 L1^-3/2 V~)
  double c0 = 0.0;
  double c1 = 0.0;
  double symbol_inf = 0.0;       // inf over t on the circle of La(t) / L(t)
};

/// Preconditioned operators L1^-1/2 L^qcf0 L1^-1/2 and L1^-1 L^qcf0.
PrecAnalysis prec_eigen_analysis(const ChainModel& model, const RegionMask& mask, double tol_scale = 1.0);
PrecAnalysis prec_eigen_analysis(const ChainModel& model, const RegionMask& mask, const GrfFactorization& grf,
                                 double tol_scale = 1.0);

/// ||(L^qcf0)^-1|| from U with the l2 norm to U with u -> ||L u||.
double u22_stability(const ChainModel& model, const RegionMask& mask);
/// 1 / (W'' gamma0) with gamma0 as in gamma0_finite_range.
double u22_bound(const ChainModel& model, const GrfFactorization& grf);

}  // namespace qcspectra
