#include "qcspectra/qc_operators.hpp"

#include <string>

#include "qcspectra/errors.hpp"

namespace qcspectra {

namespace {

void require_matching(const ChainModel& model, const RegionMask& mask) {
  if (mask.size() != model.n()) {
    throw Error(ErrorCode::size_mismatch, "mask has " + std::to_string(mask.size()) +
                                              " sites but the chain has " + std::to_string(model.n()));
  }
}

}  // namespace

LaurentPoly atomistic_symbol(const Coefficients& coeffs) {
  LaurentPoly s;
  for (int r = 1; r <= coeffs.range(); ++r) {
    const LaurentPoly stencil =
        LaurentPoly::constant(2.0) - LaurentPoly::monomial(r) - LaurentPoly::monomial(-r);
    s = s + coeffs.phi(r) * stencil;
  }
  return s;
}

DenseOperator assemble_atomistic(const ChainModel& model) {
  DenseOperator a = circulant_from_laurent(atomistic_symbol(model.coefficients()), model.n());
  a.role = OperatorRole::atomistic;
  return a;
}

DenseOperator assemble_continuum(const ChainModel& model) {
  DenseOperator c = assemble_laplacian(model.n());
  c.entries *= model.w2();
  c.role = OperatorRole::continuum;
  return c;
}

DenseOperator assemble_qcf(const ChainModel& model, const RegionMask& mask) {
  require_matching(model, mask);
  const Eigen::MatrixXd la = assemble_atomistic(model).entries;
  Eigen::MatrixXd q = assemble_continuum(model).entries;
  for (int l = 0; l < model.n(); ++l) {
    if (mask[l]) q.row(l) = la.row(l);
  }
  return {std::move(q), OperatorRole::qcf};
}

DenseOperator assemble_qcf0(const ChainModel& model, const RegionMask& mask) {
  Eigen::MatrixXd q = assemble_qcf(model, mask).entries;
  q.rowwise() -= q.colwise().mean();
  return {std::move(q), OperatorRole::qcf0};
}

DenseOperator assemble_qnl(const ChainModel& model, const RegionMask& mask) {
  if (model.r_cut() != 2) {
    throw Error(ErrorCode::unsupported_range,
                "the quasinonlocal operator is defined for second-neighbour interactions only");
  }
  require_matching(model, mask);
  const Eigen::MatrixXd l = assemble_laplacian(model.n()).entries;
  const Eigen::MatrixXd x = mask_operator(mask).entries;
  Eigen::MatrixXd q = model.w2() * l - model.phi(2) * (l * x * l);
  return {std::move(q), OperatorRole::qnl};
}

GrfFactorization factorize_model(const ChainModel& model) { return grf_factorize(build_b1(model)); }

DenseOperator assemble_Y1(const ChainModel& model) { return assemble_Y1(model, factorize_model(model)); }

DenseOperator assemble_Y1(const ChainModel& model, const GrfFactorization& grf) {
  const LaurentPoly y1 = -laurent_mul(LaurentPoly::monomial(1), grf.p1);
  DenseOperator y = circulant_from_laurent(y1, model.n());
  y.role = OperatorRole::factor_invertible;
  return y;
}

DenseOperator assemble_sym(const ChainModel& model, const RegionMask& mask) {
  return assemble_sym(model, mask, factorize_model(model));
}

DenseOperator assemble_sym(const ChainModel& model, const RegionMask& mask, const GrfFactorization& grf) {
  require_matching(model, mask);
  const Eigen::MatrixXd y = assemble_laplacian(model.n()).entries * assemble_Y1(model, grf).entries;
  Eigen::MatrixXd yx = y;
  for (int l = 0; l < model.n(); ++l) {
    if (!mask[l]) yx.col(l).setZero();
  }
  Eigen::MatrixXd s = assemble_continuum(model).entries + static_cast<double>(grf.sigma) * (yx * y.transpose());
  // Exact symmetry; the product is symmetric only up to rounding.
  s = 0.5 * (s + s.transpose()).eval();
  return {std::move(s), OperatorRole::symmetrized};
}

}  // namespace qcspectra
