#pragma once

#include "hankel_scs/signal_model.hpp"
#include "hankel_scs/types.hpp"

namespace hscs {

/// Shape of a Hankel lift rows x cols of a length rows + cols - 1 vector.
/// The symmetric solver uses the square case rows = cols = n_s, n = 2 n_s - 1.
struct HankelDims {
    Index rows = 0;
    Index cols = 0;

    Index length() const { return rows + cols - 1; }
    bool is_square() const { return rows == cols; }

    /// Square lift of an odd-length signal; throws for even n.
    static HankelDims square(Index n);

    /// Lift used by the asymmetric baseline: square for odd n, otherwise
    /// (n/2) x (n/2 + 1).
    static HankelDims balanced(Index n);
};

/// Largest dimension accepted by the dense test oracles.
inline constexpr Index kDenseLimit = 2048;

/// w_a = number of entries on the a-th skew-diagonal.
RVector skew_weights(const HankelDims& dims);

ComplexSignal apply_D(const ComplexSignal& x, const HankelDims& dims);
ComplexSignal apply_D_inv(const ComplexSignal& x, const HankelDims& dims);
inline ComplexSignal apply_D(const ComplexSignal& x) { return apply_D(x, HankelDims::square(x.size())); }
inline ComplexSignal apply_D_inv(const ComplexSignal& x)
{
    return apply_D_inv(x, HankelDims::square(x.size()));
}

/// Dense Hankel matrix M[i, j] = x[i + j]. Test oracle only.
CMatrix lift_dense(const ComplexSignal& x, const HankelDims& dims);
CMatrix lift_dense(const ComplexSignal& x);

/// out[a] = sum_{i + j = a} M[i, j] for any rectangular M.
ComplexSignal hankel_adjoint_dense(const CMatrix& M);

/// P_Omega with multiplicity weighting for with-replacement masks.
ComplexSignal p_omega(const ComplexSignal& x, const SamplingMask& mask);

/// H(u) X for a rows x cols Hankel matrix, via FFT correlation.
CMatrix hankel_times(const ComplexSignal& u, const HankelDims& dims, const CMatrix& X);

/// H(u)^H Y, via FFT correlation.
CMatrix hankel_adjoint_times(const ComplexSignal& u, const HankelDims& dims, const CMatrix& Y);

/// G^*(Z Z^T) = D^{-1} H^*(Z Z^T) via r linear self-convolutions.
ComplexSignal gstar_gram(const Factor& Z);

/// G^*(L R^H) for a rectangular lift, via r linear convolutions.
ComplexSignal gstar_cross(const CMatrix& L, const CMatrix& R);

/// (G v) conj(Z) = H(D^{-1} v) conj(Z) without forming the Hankel matrix.
CMatrix g_apply_times_conj(const ComplexSignal& v, const Factor& Z);

}  // namespace hscs
