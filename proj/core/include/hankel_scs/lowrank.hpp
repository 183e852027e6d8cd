#pragma once

#include <cstdint>
#include <functional>

#include "hankel_scs/hankel_ops.hpp"
#include "hankel_scs/signal_model.hpp"
#include "hankel_scs/types.hpp"

namespace hscs {

/// Matrix-free operator: block products with M and M^H.
struct LinearOperator {
    Index rows = 0;
    Index cols = 0;
    std::function<CMatrix(const CMatrix&)> apply;
    std::function<CMatrix(const CMatrix&)> apply_adjoint;

    static LinearOperator dense(CMatrix M);

    /// scale * H(u) for the given lift shape.
    static LinearOperator hankel(ComplexSignal u, const HankelDims& dims, double scale = 1.0);
};

struct SvdOptions {
    Index oversample = 10;
    int power_iters = 2;           // minimum number of subspace iterations
    double tol = 1e-10;            // residual ||M^H u_i - sigma_i v_i|| / sigma_1
    int max_iters = 300;
    bool require_convergence = true;
};

struct SvdResult {
    CMatrix U;
    RVector sigma;
    CMatrix V;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

class SvdNotConverged : public NumericalError {
public:
    SvdNotConverged(const std::string& what, double residual)
        : NumericalError(what), residual_(residual)
    {
    }
    double residual() const { return residual_; }

private:
    double residual_;
};

/// Rank-r truncated SVD by randomized block subspace iteration with
/// Rayleigh-Ritz extraction. Deterministic for a given seed.
SvdResult trunc_svd(const LinearOperator& op, Index r, std::uint64_t seed,
                    const SvdOptions& opts = {});

/// Takagi factor M ~ U diag(sigma) U^T of a complex symmetric matrix.
struct TakagiFactor {
    CMatrix U;
    RVector sigma;

    /// Z = U diag(sigma)^{1/2}, so that Z Z^T = U diag(sigma) U^T.
    Factor factor() const;
    CMatrix reconstruct() const;
};

/// Full Takagi factorization of a small dense complex symmetric matrix.
TakagiFactor takagi_dense(const CMatrix& S);

/// Rank-r truncated Takagi factorization of a complex symmetric operator.
TakagiFactor takagi_truncated(const LinearOperator& op, Index r, std::uint64_t seed,
                              const SvdOptions& opts = {});

struct SpectralInit {
    Factor Z0;
    double sigma1 = 0.0;
    TakagiFactor takagi;
};

/// Options used by default for the initialization step: the subspace need
/// not be resolved to machine precision since the gradient phase refines it.
SvdOptions spectral_init_svd_options();

/// T_r(p^{-1} G P_Omega(y)) = U S U^T and Z0 = U S^{1/2}. `observed` is the
/// weighted (y = D x) signal of odd length, zero-filled off the mask.
SpectralInit spectral_init(const ComplexSignal& observed, const SamplingMask& mask, Index r,
                           std::uint64_t seed, const SvdOptions& opts = spectral_init_svd_options());

}  // namespace hscs
