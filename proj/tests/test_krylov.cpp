#include <cmath>

#include <Eigen/Dense>

#include "doctest.h"
#include "oracles.hpp"
#include "qcspectra/errors.hpp"
#include "qcspectra/krylov.hpp"
#include "qcspectra/qc_operators.hpp"

using namespace qcspectra;

namespace {

LinearMap matrix_map(const Eigen::MatrixXd& a) {
  return [a](const Eigen::VectorXd& u) -> Eigen::VectorXd { return a * u; };
}

}  // namespace

TEST_CASE("GMRES on trivial operators") {
  const PeriodicVector b(oracle::random_vector(10, 1));
  const GmresResult id = gmres(matrix_map(Eigen::MatrixXd::Identity(10, 10)), b, InnerProduct::euclidean(), 1e-12, 10);
  CHECK(id.trace.converged);
  CHECK(id.trace.iterations == 1);
  CHECK((id.solution - b.values()).norm() <= 1e-13);

  Eigen::VectorXd diag(10);
  for (int i = 0; i < 10; ++i) diag[i] = i % 2 == 0 ? 1.0 : 3.0;
  const Eigen::MatrixXd a = diag.asDiagonal();
  const GmresResult two = gmres(matrix_map(a), b, InnerProduct::euclidean(), 1e-12, 10);
  CHECK(two.trace.converged);
  CHECK(two.trace.iterations <= 2);
  CHECK((a * two.solution - b.values()).norm() <= 1e-11);

  const GmresResult zero = gmres(matrix_map(a), PeriodicVector::constant(10, 0.0), InnerProduct::euclidean(), 1e-12, 5);
  CHECK(zero.trace.converged);
  CHECK(zero.trace.iterations == 0);
  CHECK_THROWS_AS(gmres(matrix_map(a), b, InnerProduct::euclidean(), 1e-12, 0), Error);
  CHECK_THROWS_AS(gmres(matrix_map(a), b, InnerProduct::euclidean(), 1e-12, 11), Error);
  CHECK(std::string(to_string(InnerProductKind::l1_weighted)) == "l1");
}

TEST_CASE("GMRES residuals match an explicit Krylov least-squares oracle") {
  const ChainModel m(48, {1.0, -0.1, -0.03});
  const RegionMask mask = RegionMask::block(48, 12);
  const Eigen::MatrixXd q0 = assemble_qcf0(m, mask).entries;
  const PeriodicVector f = random_mean_zero_rhs(48, 3);
  const GmresResult r = gmres(matrix_map(q0), f, InnerProduct::euclidean(), 1e-20, 12, true);
  CHECK(r.trace.iterations == 12);
  CHECK_FALSE(r.trace.converged);
  const auto ref = oracle::gmres_residuals(q0, f.values(), 12);
  for (int k = 0; k <= 12; ++k) {
    CHECK(r.trace.residual_norms[k] == doctest::Approx(ref[k]).epsilon(1e-8));
    if (k > 0) CHECK(r.trace.residual_norms[k] <= r.trace.residual_norms[k - 1] * (1.0 + 1e-12));
  }
  CHECK((f.values() - q0 * r.solution).norm() == doctest::Approx(ref[12]).epsilon(1e-6));
}

TEST_CASE("plain QCF0 solve converges on the mean-zero subspace") {
  const ChainModel m(64, {1.0, -0.1});
  const RegionMask mask = RegionMask::block(64, 8);
  const PeriodicVector f = random_mean_zero_rhs(64, 5);
  CHECK(std::abs(f.values().sum()) <= 1e-12);
  const QcfSolve s = solve_qcf_plain(m, mask, f, 1e-10);
  CHECK(s.trace.converged);
  const Eigen::MatrixXd q0 = assemble_qcf0(m, mask).entries;
  CHECK((q0 * s.solution - f.values()).norm() <= 1e-9 * f.values().norm());
  CHECK(std::abs(s.solution.sum()) <= 1e-9);
  CHECK(s.within_envelope);
  CHECK(s.envelope.size() == s.trace.residual_norms.size());
  CHECK(s.gamma > 0.0);
  CHECK(s.gamma < 1.0);
  CHECK(s.cond_vqcf >= 1.0);

  try {
    (void)solve_qcf_plain(m, mask, PeriodicVector::constant(64, 1.0), 1e-10);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::projection_violation);
  }
  CHECK_THROWS_AS(solve_qcf_pgmres_left(m, mask, PeriodicVector::constant(64, 1.0), 1e-10), Error);
  CHECK_THROWS_AS(solve_qcf_pgmres_energy(m, mask, PeriodicVector::constant(64, 1.0), 1e-10), Error);
}

TEST_CASE("preconditioned variants match their Euclidean reformulations") {
  const int n = 40;
  const ChainModel m(n, {1.0, -0.05, -0.02, -0.01});
  const RegionMask mask = RegionMask::block(n, 10);
  const PeriodicVector f = random_mean_zero_rhs(n, 7);
  const Eigen::MatrixXd q0 = assemble_qcf0(m, mask).entries;
  const Eigen::MatrixXd l1 = modified_laplacian(n).entries;
  const Eigen::MatrixXd l1i = l1.inverse();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l1);
  const Eigen::MatrixXd half_inv = es.operatorInverseSqrt();

  const QcfSolve left = solve_qcf_pgmres_left(m, mask, f, 1e-10);
  const auto ref_left = oracle::gmres_residuals(l1i * q0, l1i * f.values(), left.trace.iterations);
  for (int k = 0; k <= left.trace.iterations; ++k) {
    CHECK(left.trace.residual_norms[k] == doctest::Approx(ref_left[k]).epsilon(1e-6).scale(1e-6 * ref_left[0]));
  }

  const QcfSolve energy = solve_qcf_pgmres_energy(m, mask, f, 1e-10);
  CHECK(energy.trace.inner_product == InnerProductKind::l1_weighted);
  const auto ref_energy = oracle::gmres_residuals(half_inv * q0 * half_inv, half_inv * f.values(), energy.trace.iterations);
  for (int k = 0; k <= energy.trace.iterations; ++k) {
    CHECK(energy.trace.residual_norms[k] == doctest::Approx(ref_energy[k]).epsilon(1e-6).scale(1e-6 * ref_energy[0]));
  }

  // All three solvers reach the same mean-zero solution.
  const QcfSolve plain = solve_qcf_plain(m, mask, f, 1e-12);
  const Eigen::VectorXd u = plain.solution;
  CHECK((left.solution - u).norm() <= 1e-7 * u.norm());
  CHECK((energy.solution - u).norm() <= 1e-7 * u.norm());

  // The preconditioned operator restricted to U equals L^+ L^qcf0 there.
  Eigen::VectorXd v = oracle::random_vector(n, 9);
  v.array() -= v.mean();
  const Eigen::MatrixXd lplus = assemble_laplacian(n).entries.completeOrthogonalDecomposition().pseudoInverse();
  CHECK((l1i * q0 * v - lplus * q0 * v).norm() <= 1e-10 * (q0 * v).norm());
}

TEST_CASE("without atomistic sites the preconditioned operator is W'' on U") {
  const ChainModel m(64, {1.0, -0.1, -0.02});
  const PeriodicVector f = random_mean_zero_rhs(64, 11);
  const QcfSolve left = solve_qcf_pgmres_left(m, RegionMask::empty(64), f, 1e-10);
  CHECK(left.trace.converged);
  CHECK(left.trace.iterations <= 2);
  const QcfSolve energy = solve_qcf_pgmres_energy(m, RegionMask::empty(64), f, 1e-10);
  CHECK(energy.trace.iterations <= 2);
}

TEST_CASE("preconditioned iteration counts do not grow with N") {
  const ChainModel base(32, {1.0, -0.1});
  for (int n : {32, 64, 128}) {
    const RegionMask mask = RegionMask::block(n, 8);
    const QcfSolve s = solve_qcf_pgmres_energy(base.with_size(n), mask, random_mean_zero_rhs(n, 1), 1e-10);
    CHECK(s.trace.converged);
    CHECK(s.trace.iterations <= mask.atomistic_count() + 5);
  }
}

TEST_CASE("rate fit and right-hand sides") {
  GmresTrace t;
  for (int m = 0; m < 10; ++m) t.residual_norms.push_back(3.0 * std::pow(0.4, m));
  CHECK(fit_rate(t) == doctest::Approx(0.4));

  const PeriodicVector a = random_mean_zero_rhs(33, 17);
  CHECK(a.is_mean_zero());
  CHECK(a.values() == random_mean_zero_rhs(33, 17).values());
  CHECK_FALSE(a.values() == random_mean_zero_rhs(33, 18).values());

  const RegionMask mask = RegionMask::block(20, 6);
  const PeriodicVector d = dipole_rhs(mask);
  CHECK(d.is_mean_zero());
  CHECK(d.values().cwiseAbs().sum() == doctest::Approx(2.0));
}
