#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "qcspectra/laurent_poly.hpp"

namespace qcspectra {

class RegionMask;

/// An N-periodic real sequence; indices wrap modulo N.
class PeriodicVector {
 public:
  PeriodicVector() = default;
  explicit PeriodicVector(Eigen::VectorXd values);

  static PeriodicVector constant(int n, double value = 1.0);

  int size() const { return static_cast<int>(values_.size()); }
  const Eigen::VectorXd& values() const { return values_; }

  double operator()(long index) const;

  /// |sum u| <= tol_factor * N * max|u|.
  bool is_mean_zero(double tol_factor = 1e-12) const;

 private:
  Eigen::VectorXd values_;
};

enum class OperatorRole {
  difference,          // D
  laplacian,           // L
  translation,         // T
  modified_laplacian,  // L1
  mean_zero_projection,
  mask,                // X
  atomistic,
  continuum,
  qcf,
  qcf0,
  qnl,
  symmetrized,
  factor,              // Y
  factor_invertible,   // Y1
  custom,
};

const char* to_string(OperatorRole role);

/// Square N x N matrix together with the role it plays.
struct DenseOperator {
  Eigen::MatrixXd entries;
  OperatorRole role = OperatorRole::custom;

  int size() const { return static_cast<int>(entries.rows()); }
  Eigen::VectorXd apply(const Eigen::VectorXd& u) const { return entries * u; }
};

/// Smallest admissible chain size.
inline constexpr int kMinChainSize = 4;

void require_chain_size(int n);

DenseOperator assemble_difference(int n);
DenseOperator assemble_laplacian(int n);
DenseOperator assemble_translation(int n);
DenseOperator project_mean_zero(int n);
/// L1 = L + (1/N) e e^T, so that L1 e = e.
DenseOperator modified_laplacian(int n);
DenseOperator mask_operator(const RegionMask& mask);

/// The circulant matrix p(T) with (T u)_l = u_{l+1}.
DenseOperator circulant_from_laurent(const LaurentPoly& p, int n);

/// {p(exp(i 2 pi k / n)) : k = 1..n}, the spectrum of p(T).
std::vector<std::complex<double>> circulant_spectrum(const LaurentPoly& p, int n);

/// Real orthonormal Fourier basis: constant, then (cos, sin) pairs for
/// k = 1 .. ceil(n/2) - 1, then the alternating mode for even n. Every
/// column is an eigenvector of every symmetric circulant.
Eigen::MatrixXd real_fourier_basis(int n);

/// Frequency index k of each column of real_fourier_basis(n).
std::vector<int> real_fourier_frequencies(int n);

/// L1^s via the Fourier eigendecomposition of L1 (eigenvalue 1 on e,
/// 4 sin^2(pi k / n) on frequency k).
Eigen::MatrixXd modified_laplacian_power(int n, double s);

/// N x (N-1) matrix with orthonormal columns spanning the mean-zero subspace.
Eigen::MatrixXd mean_zero_basis(int n);

}  // namespace qcspectra
