#include "qcspectra/periodic_core.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qcspectra/chain_model.hpp"
#include "qcspectra/errors.hpp"

namespace qcspectra {

namespace {

int wrap(long index, int n) {
  long r = index % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

}  // namespace

PeriodicVector::PeriodicVector(Eigen::VectorXd values) : values_(std::move(values)) {
  require_chain_size(static_cast<int>(values_.size()));
}

PeriodicVector PeriodicVector::constant(int n, double value) {
  return PeriodicVector(Eigen::VectorXd::Constant(n, value));
}

double PeriodicVector::operator()(long index) const { return values_[wrap(index, size())]; }

bool PeriodicVector::is_mean_zero(double tol_factor) const {
  const double max_abs = values_.cwiseAbs().maxCoeff();
  return std::abs(values_.sum()) <= tol_factor * size() * max_abs;
}

const char* to_string(OperatorRole role) {
  switch (role) {
    case OperatorRole::difference: return "D";
    case OperatorRole::laplacian: return "L";
    case OperatorRole::translation: return "T";
    case OperatorRole::modified_laplacian: return "L1";
    case OperatorRole::mean_zero_projection: return "PU";
    case OperatorRole::mask: return "X";
    case OperatorRole::atomistic: return "La";
    case OperatorRole::continuum: return "Lc";
    case OperatorRole::qcf: return "Lqcf";
    case OperatorRole::qcf0: return "Lqcf0";
    case OperatorRole::qnl: return "Lqnl";
    case OperatorRole::symmetrized: return "Lsym";
    case OperatorRole::factor: return "Y";
    case OperatorRole::factor_invertible: return "Y1";
    case OperatorRole::custom: return "custom";
  }
  return "custom";
}

void require_chain_size(int n) {
  if (n < kMinChainSize) {
    throw Error(ErrorCode::invalid_size,
                "chain size " + std::to_string(n) + " is below the minimum of 4");
  }
}

DenseOperator assemble_difference(int n) {
  require_chain_size(n);
  DenseOperator op{circulant_from_laurent(difference_symbol(), n).entries, OperatorRole::difference};
  return op;
}

DenseOperator assemble_laplacian(int n) {
  require_chain_size(n);
  return {circulant_from_laurent(laplacian_symbol(), n).entries, OperatorRole::laplacian};
}

DenseOperator assemble_translation(int n) {
  require_chain_size(n);
  return {circulant_from_laurent(LaurentPoly::monomial(1), n).entries, OperatorRole::translation};
}

DenseOperator project_mean_zero(int n) {
  require_chain_size(n);
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(n, n);
  p.array() -= 1.0 / n;
  return {std::move(p), OperatorRole::mean_zero_projection};
}

DenseOperator modified_laplacian(int n) {
  DenseOperator l = assemble_laplacian(n);
  l.entries.array() += 1.0 / n;
  l.role = OperatorRole::modified_laplacian;
  return l;
}

DenseOperator mask_operator(const RegionMask& mask) {
  const int n = mask.size();
  require_chain_size(n);
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
  for (int l = 0; l < n; ++l) x(l, l) = mask[l] ? 1.0 : 0.0;
  return {std::move(x), OperatorRole::mask};
}

DenseOperator circulant_from_laurent(const LaurentPoly& p, int n) {
  require_chain_size(n);
  if (2 * p.bandwidth() >= n) {
    throw Error(ErrorCode::wrap_ambiguity,
                "Laurent bandwidth " + std::to_string(p.bandwidth()) +
                    " is not below n/2 for n = " + std::to_string(n));
  }
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  if (!p.is_zero()) {
    // (T^k u)_l = u_{l+k}
    for (int k = p.lo(); k <= p.hi(); ++k) {
      const double ck = p.coeff(k);
      if (ck == 0.0) continue;
      for (int l = 0; l < n; ++l) c(l, wrap(l + k, n)) += ck;
    }
  }
  return {std::move(c), OperatorRole::custom};
}

std::vector<std::complex<double>> circulant_spectrum(const LaurentPoly& p, int n) {
  std::vector<std::complex<double>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) out.push_back(p.on_circle(2.0 * std::numbers::pi * k / n));
  return out;
}

std::vector<int> real_fourier_frequencies(int n) {
  std::vector<int> freq{0};
  for (int k = 1; 2 * k < n; ++k) {
    freq.push_back(k);
    freq.push_back(k);
  }
  if (n % 2 == 0) freq.push_back(n / 2);
  return freq;
}

Eigen::MatrixXd real_fourier_basis(int n) {
  require_chain_size(n);
  Eigen::MatrixXd q(n, n);
  const double two_pi = 2.0 * std::numbers::pi;
  q.col(0).setConstant(1.0 / std::sqrt(n));
  int col = 1;
  const double amp = std::sqrt(2.0 / n);
  for (int k = 1; 2 * k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      const double phase = two_pi * static_cast<double>((static_cast<long>(k) * l) % n) / n;
      q(l, col) = amp * std::cos(phase);
      q(l, col + 1) = amp * std::sin(phase);
    }
    col += 2;
  }
  if (n % 2 == 0) {
    for (int l = 0; l < n; ++l) q(l, col) = (l % 2 == 0 ? 1.0 : -1.0) / std::sqrt(n);
  }
  return q;
}

Eigen::MatrixXd modified_laplacian_power(int n, double s) {
  const Eigen::MatrixXd q = real_fourier_basis(n);
  const std::vector<int> freq = real_fourier_frequencies(n);
  Eigen::VectorXd d(n);
  for (int j = 0; j < n; ++j) {
    const double sk = std::sin(std::numbers::pi * freq[static_cast<std::size_t>(j)] / n);
    const double lambda = freq[static_cast<std::size_t>(j)] == 0 ? 1.0 : 4.0 * sk * sk;
    d[j] = std::pow(lambda, s);
  }
  return q * d.asDiagonal() * q.transpose();
}

Eigen::MatrixXd mean_zero_basis(int n) {
  require_chain_size(n);
  // Householder reflector sending e/sqrt(n) to -e_0; its other columns span U.
  Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(n));
  v[0] += 1.0;
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) - (2.0 / v.squaredNorm()) * v * v.transpose();
  return h.rightCols(n - 1);
}

}  // namespace qcspectra
