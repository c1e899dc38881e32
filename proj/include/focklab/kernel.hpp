#pragma once

#include "focklab/scaled.hpp"
#include "focklab/symbol.hpp"

namespace focklab {

/// Reproducing kernel K_{m,alpha}(z, w) = C_m E^{(d-1)}_{1/m,1/m}(alpha^{1/m} <z, w>),
/// in scaled form (grows like exp(alpha |z| |w| ... )).
ScaledComplex kernel_eval(const SpaceParams& params, const VecC& z, const VecC& w);

struct KernelLsqResult {
    VecC coefficients;
    double residual;
};

/// Least-squares approximation of zeta^{target} by kernel sections K(., a_l):
/// solves the Gram system G c = v with G_{ij} = K(a_i, a_j) and
/// v_i = <zeta^nu, K_{a_i}> = a_i^nu, returning coefficients and the norm of
/// the residual.  Throws IllConditionedError when the (ridge-regularized)
/// solve fails to reproduce the right-hand side to 1e-6.
KernelLsqResult kernel_least_squares(const SpaceParams& params,
                                     const MultiIndex& target_nu,
                                     const std::vector<VecC>& nodes);

} // namespace focklab
