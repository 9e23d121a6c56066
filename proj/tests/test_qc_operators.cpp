#include <random>

#include <Eigen/Dense>

#include "doctest.h"
#include "oracles.hpp"
#include "qcspectra/errors.hpp"
#include "qcspectra/qc_operators.hpp"

using namespace qcspectra;

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

RegionMask random_mask(int n, std::mt19937& rng) {
  std::bernoulli_distribution coin(0.4);
  std::vector<bool> chi(n);
  for (int l = 0; l < n; ++l) chi[l] = coin(rng);
  return RegionMask(chi);
}

}  // namespace

TEST_CASE("atomistic operator") {
  const std::vector<double> phi{1.0, -0.2, 0.05};
  const ChainModel m(12, phi);
  const Eigen::MatrixXd la = assemble_atomistic(m).entries;
  CHECK(max_abs(la - oracle::atomistic(phi, 12)) <= 1e-15);
  CHECK(max_abs(la - la.transpose()) == 0.0);
  CHECK((la * Eigen::VectorXd::Ones(12)).norm() <= 1e-14);

  // R = 2: L^a = W'' L - phi_2 L^2
  const ChainModel m2(10, {1.0, -0.3});
  const Eigen::MatrixXd l = assemble_laplacian(10).entries;
  CHECK(max_abs(assemble_atomistic(m2).entries - (m2.w2() * l - m2.phi(2) * l * l)) <= 1e-14);
}

TEST_CASE("atomistic dominates continuum when b >= 0") {
  const ChainModel m(20, {1.0, -0.1, -0.03});
  const Eigen::MatrixXd d = assemble_atomistic(m).entries - assemble_continuum(m).entries;
  double worst = 1e300;
  for (unsigned s = 0; s < 100; ++s) {
    const Eigen::VectorXd u = oracle::random_vector(20, s);
    worst = std::min(worst, u.dot(d * u) / u.squaredNorm());
  }
  CHECK(worst >= -1e-10);
}

TEST_CASE("continuum operator") {
  const ChainModel m(9, {1.0, -0.1, -0.02});
  const Eigen::MatrixXd lc = assemble_continuum(m).entries;
  CHECK(max_abs(lc - m.w2() * assemble_laplacian(9).entries) <= 1e-14);
  CHECK((lc * Eigen::VectorXd::Ones(9)).norm() <= 1e-14);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lc);
  const auto ref = oracle::laplacian_eigenvalues(9, m.w2());
  for (int k = 0; k < 9; ++k) CHECK(es.eigenvalues()[k] == doctest::Approx(ref[k]).scale(1.0));
}

TEST_CASE("QCF operator splices atomistic and continuum rows") {
  std::mt19937 rng(1);
  const ChainModel m(16, {1.0, -0.1, -0.04});
  const RegionMask mask = random_mask(16, rng);
  const Eigen::MatrixXd q = assemble_qcf(m, mask).entries;
  const Eigen::MatrixXd la = assemble_atomistic(m).entries;
  const Eigen::MatrixXd lc = assemble_continuum(m).entries;
  for (int l = 0; l < 16; ++l) CHECK(q.row(l) == (mask[l] ? la.row(l) : lc.row(l)));
  CHECK((q * Eigen::VectorXd::Ones(16)).norm() <= 1e-14);
  CHECK(assemble_qcf(m, RegionMask::all_atomistic(16)).entries == la);
  CHECK(assemble_qcf(m, RegionMask::empty(16)).entries == lc);
  CHECK_THROWS_AS(assemble_qcf(m, RegionMask::empty(15)), Error);
}

TEST_CASE("second-neighbour representations hold for random models and masks") {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> c2(-0.24, 0.2);
  std::uniform_int_distribution<int> size(5, 40);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = size(rng);
    const ChainModel m(n, {1.0, c2(rng)});
    const RegionMask mask = random_mask(n, rng);
    const Eigen::MatrixXd l = assemble_laplacian(n).entries;
    const Eigen::MatrixXd x = mask_operator(mask).entries;
    CHECK(max_abs(assemble_qcf(m, mask).entries - (m.w2() * l - m.phi(2) * x * l * l)) <= 1e-13);
    const Eigen::MatrixXd qnl = assemble_qnl(m, mask).entries;
    CHECK(max_abs(qnl - (m.w2() * l - m.phi(2) * l * x * l)) <= 1e-13);
    CHECK(max_abs(qnl - qnl.transpose()) <= 1e-13);
  }
}

TEST_CASE("QCF0 projection") {
  const ChainModel m(14, {1.0, -0.2});
  const RegionMask mask = RegionMask::block(14, 5);
  const Eigen::MatrixXd q0 = assemble_qcf0(m, mask).entries;
  CHECK(q0.colwise().sum().cwiseAbs().maxCoeff() <= 1e-13);
  CHECK(max_abs(q0 - project_mean_zero(14).entries * assemble_qcf(m, mask).entries) <= 1e-14);
  CHECK(max_abs(assemble_qcf0(m, RegionMask::all_atomistic(14)).entries - assemble_atomistic(m).entries) <= 1e-14);
  CHECK(max_abs(q0 - q0.transpose()) > 1e-3);
}

TEST_CASE("QNL operator special cases and range restriction") {
  const ChainModel m(12, {1.0, -0.15});
  CHECK(max_abs(assemble_qnl(m, RegionMask::all_atomistic(12)).entries - assemble_atomistic(m).entries) <= 1e-14);
  CHECK(max_abs(assemble_qnl(m, RegionMask::empty(12)).entries - assemble_continuum(m).entries) <= 1e-14);
  for (const auto& op : {assemble_qnl(m, RegionMask::block(12, 4)).entries, assemble_atomistic(m).entries}) {
    CHECK((op * Eigen::VectorXd::Ones(12)).norm() <= 1e-13);
  }
  try {
    (void)assemble_qnl(ChainModel(12, {1.0, -0.1, -0.01}), RegionMask::empty(12));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unsupported_range);
  }
}

TEST_CASE("Y1 for phi_2 = -1 is minus the translation") {
  const ChainModel m(8, {5.0, -1.0});
  CHECK(max_abs(assemble_Y1(m).entries + assemble_translation(8).entries) <= 1e-14);
}

TEST_CASE("Y1 factorizes L^a - L^c and respects the beta bounds") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int range = 2 + trial % 5;
    const ChainModel m(32, oracle::random_nonpositive_phi(rng, range, 0.5));
    const GrfFactorization grf = factorize_model(m);
    const Eigen::MatrixXd y1 = assemble_Y1(m, grf).entries;
    const Eigen::MatrixXd l = assemble_laplacian(32).entries;
    const Eigen::MatrixXd diff = assemble_atomistic(m).entries - assemble_continuum(m).entries;
    CHECK(max_abs(l * y1 * y1.transpose() * l - grf.sigma * diff) <= 1e-10 * max_abs(diff));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(y1);
    CHECK(svd.singularValues()[0] <= grf.beta1 + 1e-10);
    CHECK(svd.singularValues()[31] >= grf.beta0 - 1e-10);
  }
}

TEST_CASE("symmetrized operator is symmetric and similar to QCF0") {
  std::mt19937 rng(4);
  for (int range : {2, 3, 5}) {
    const ChainModel m(30, oracle::random_nonpositive_phi(rng, range, 0.5));
    const RegionMask mask = random_mask(30, rng);
    const GrfFactorization grf = factorize_model(m);
    const Eigen::MatrixXd s = assemble_sym(m, mask, grf).entries;
    CHECK(max_abs(s - s.transpose()) <= 1e-12);
    const Eigen::MatrixXd t = modified_laplacian(30).entries * assemble_Y1(m, grf).entries;
    const Eigen::MatrixXd lhs = t * assemble_qcf0(m, mask).entries;
    const Eigen::MatrixXd rhs = s * t;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(s);
    CHECK((lhs - rhs).norm() <= 1e-10 * svd.singularValues()[0]);
  }
  const ChainModel m(20, {1.0, -0.1, -0.02});
  CHECK(max_abs(assemble_sym(m, RegionMask::all_atomistic(20)).entries - assemble_atomistic(m).entries) <= 1e-12);
  CHECK(max_abs(assemble_sym(m, RegionMask::empty(20)).entries - assemble_continuum(m).entries) <= 1e-14);
}
