#pragma once

#include "qcspectra/chain_model.hpp"
#include "qcspectra/laurent.hpp"
#include "qcspectra/periodic_core.hpp"

namespace qcspectra {

/// Symbol of L^a:  sum_r phi_r (-t^r + 2 - t^-r).
LaurentPoly atomistic_symbol(const Coefficients& coeffs);

/// (L^a u)_l = sum_r phi_r (-u_{l+r} + 2 u_l - u_{l-r}).
DenseOperator assemble_atomistic(const ChainModel& model);
/// L^c = W'' L.
DenseOperator assemble_continuum(const ChainModel& model);
/// L^qcf = L^c + X (L^a - L^c): atomistic rows on A, continuum rows on C.
DenseOperator assemble_qcf(const ChainModel& model, const RegionMask& mask);
/// P_U L^qcf.
DenseOperator assemble_qcf0(const ChainModel& model, const RegionMask& mask);
/// W'' L - phi_2 L X L; second-neighbour models only.
DenseOperator assemble_qnl(const ChainModel& model, const RegionMask& mask);

/// Y1 = -T p1(T).
DenseOperator assemble_Y1(const ChainModel& model);
DenseOperator assemble_Y1(const ChainModel& model, const GrfFactorization& grf);

/// L^sym = L^c + sigma (L Y1) X (L Y1)^T.
DenseOperator assemble_sym(const ChainModel& model, const RegionMask& mask);
DenseOperator assemble_sym(const ChainModel& model, const RegionMask& mask, const GrfFactorization& grf);

/// Factorization of b1 for the model's coefficients.
GrfFactorization factorize_model(const ChainModel& model);

}  // namespace qcspectra
