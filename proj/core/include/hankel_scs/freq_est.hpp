#pragma once

#include <vector>

#include "hankel_scs/signal_model.hpp"
#include "hankel_scs/types.hpp"

namespace hscs {

struct ModeEstimate {
    std::vector<double> freqs;     // in [0, 1), ascending
    std::vector<double> dampings;
    std::vector<cplx> amps;

    /// Model of length n with these modes; negative dampings are clamped to zero.
    SpectralModel to_model(Index n) const;
};

/// ESPRIT on the rank-r signal subspace of the Hankel lift of x, amplitudes by
/// least squares. Requires n >= 2r + 1.
ModeEstimate esprit(const ComplexSignal& x, Index r);

}  // namespace hscs
