#pragma once

#include "hankel_scs/hankel_ops.hpp"
#include "hankel_scs/shgd.hpp"

namespace hscs {

/// Asymmetric factors with H x ~ Z_U Z_V^H.
struct FactorPair {
    CMatrix Z_U;  // n_1 x r
    CMatrix Z_V;  // n_2 x r

    Index rank() const { return Z_U.cols(); }
    HankelDims dims() const { return {Z_U.rows(), Z_V.rows()}; }
};

/// 1/(4p) ||P_Omega(G^*(Z_U Z_V^H) - y)||^2 + 1/4 ||(I - G G^*)(Z_U Z_V^H)||_F^2
///   + lambda_b ||Z_U^H Z_U - Z_V^H Z_V||_F^2.
/// `y_obs` is the weighted signal for the pair's lift shape.
double pgd_loss(const FactorPair& pair, const ComplexSignal& y_obs, const SamplingMask& mask,
                double p, double balancing_weight = 1.0 / 16.0);

/// Descent direction used by the baseline, the Wirtinger gradient of 2 f:
/// d/dt f(pair + t Delta)|_{t=0} = 1/2 Re <grad, Delta>.
FactorPair pgd_grad(const FactorPair& pair, const ComplexSignal& y_obs, const SamplingMask& mask,
                    double p, double balancing_weight = 1.0 / 16.0);

/// Projected gradient descent on both factors. Even n uses the
/// (n/2) x (n/2 + 1) lift, odd n the square one.
RecoveryResult pgd_recover(const ComplexSignal& observed, const SamplingMask& mask,
                           const SolverConfig& config);

}  // namespace hscs
