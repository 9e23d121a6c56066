#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "qcspectra/chain_model.hpp"
#include "qcspectra/periodic_core.hpp"

namespace qcspectra {

enum class InnerProductKind { euclidean, l1_weighted };

const char* to_string(InnerProductKind kind);

/// <u, v> = (F u) . (F v) with F = I or F = L1^{1/2}.
class InnerProduct {
 public:
  static InnerProduct euclidean();
  static InnerProduct l1_weighted(int n);

  InnerProductKind kind() const { return kind_; }
  /// F u.
  Eigen::VectorXd factor_apply(const Eigen::VectorXd& u) const;
  double norm(const Eigen::VectorXd& u) const { return factor_apply(u).norm(); }

 private:
  InnerProductKind kind_ = InnerProductKind::euclidean;
  Eigen::MatrixXd factor_;
};

struct GmresTrace {
  std::vector<double> residual_norms;  // entry m is the estimate after m steps
  int iterations = 0;
  bool converged = false;
  double tol = 0.0;
  InnerProductKind inner_product = InnerProductKind::euclidean;
};

struct GmresResult {
  Eigen::VectorXd solution;
  GmresTrace trace;
};

using LinearMap = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Full GMRES from a zero initial guess. Stops once the residual norm in the
/// chosen inner product drops to tol times its initial value.
GmresResult gmres(const LinearMap& apply, const PeriodicVector& rhs, const InnerProduct& inner, double tol,
                  int maxit, bool require_mean_zero = false);

struct QcfSolve {
  Eigen::VectorXd solution;
  GmresTrace trace;
  // Plain solves only.
  double gamma = 0.0;  // lambda_2 / lambda_N
  double cond_vqcf = 0.0;
  std::vector<double> envelope;
  bool within_envelope = true;
};

/// GMRES on L^qcf0 u = f, with the eigenbasis envelope
///   2 cond(V^qcf) ((1 - sqrt g)/(1 + sqrt g))^m ||r0||.
QcfSolve solve_qcf_plain(const ChainModel& model, const RegionMask& mask, const PeriodicVector& rhs, double tol,
                         int maxit = -1);
/// GMRES on L1^-1 L^qcf0 u = L1^-1 f, Euclidean residuals.
QcfSolve solve_qcf_pgmres_left(const ChainModel& model, const RegionMask& mask, const PeriodicVector& rhs,
                               double tol, int maxit = -1);
/// GMRES on L1^-1 L^qcf0 u = L1^-1 f minimising in the L1 norm.
QcfSolve solve_qcf_pgmres_energy(const ChainModel& model, const RegionMask& mask, const PeriodicVector& rhs,
                                 double tol, int maxit = -1);

/// Geometric rate q from a least-squares fit of log r_m against m.
double fit_rate(const GmresTrace& trace);

/// Mean-zero vector with entries drawn from [-1, 1).
PeriodicVector random_mean_zero_rhs(int n, std::uint64_t seed);
/// +1 and -1 point forces on the first and last atomistic sites.
PeriodicVector dipole_rhs(const RegionMask& mask);

}  // namespace qcspectra
