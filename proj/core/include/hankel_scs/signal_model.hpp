#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "hankel_scs/types.hpp"

namespace hscs {

using Rng = std::mt19937_64;

/// Ground truth for a superposition of r (possibly damped) complex sinusoids
///   x[t] = sum_k amps[k] * exp((i 2 pi freqs[k] - dampings[k]) t),  t = 0..n-1.
struct SpectralModel {
    Index n = 0;
    std::vector<double> freqs;     // normalized, in [0, 1)
    std::vector<double> dampings;  // per-sample decay, >= 0
    std::vector<cplx> amps;

    Index rank() const { return static_cast<Index>(freqs.size()); }

    /// Pole w_k = exp(i 2 pi f_k - tau_k).
    cplx pole(Index k) const;

    /// Throws InvalidArgument if any model invariant is violated.
    void validate() const;
};

/// Ordered list of observed indices in [0, n). With replacement, an index may
/// appear several times and counts with its multiplicity.
class SamplingMask {
public:
    SamplingMask(Index n, std::vector<Index> indices, bool with_replacement);

    static SamplingMask full(Index n);

    Index n() const { return n_; }
    Index m() const { return static_cast<Index>(indices_.size()); }
    double ratio() const { return static_cast<double>(m()) / static_cast<double>(n_); }
    bool with_replacement() const { return with_replacement_; }
    const std::vector<Index>& indices() const { return indices_; }

    /// Per-position multiplicity (0 for unobserved positions).
    RVector multiplicity() const;

    /// Same index list embedded in a longer ambient signal (zero padding).
    SamplingMask embedded(Index new_n) const;

private:
    Index n_;
    std::vector<Index> indices_;
    bool with_replacement_;
};

/// Wrap-around distance on the unit circle of normalized frequencies.
double wrap_distance(double f, double g);

/// Smallest pairwise wrap-around distance (1.0 for fewer than two frequencies).
double min_separation(const std::vector<double>& freqs);

ComplexSignal synthesize(const SpectralModel& model);

struct ModelOptions {
    std::optional<double> min_sep;
    bool damped = false;
    double damping_lo = 0.0;
    double damping_hi = 0.0;
    int max_attempts = 10000;
};

/// Random model following the phase-transition setup: uniform frequencies,
/// amplitudes (1 + 10^{0.5 c}) e^{-i phi} with c ~ U[0,1), phi ~ U[0, 2 pi).
SpectralModel random_model(Index n, Index r, const ModelOptions& opts, Rng& rng);

SamplingMask uniform_mask(Index n, Index m, bool with_replacement, Rng& rng);

/// P_Omega(x + e) zero-filled off the mask, with e = sigma_e ||P_Omega x|| w / ||w||
/// and w standard complex Gaussian on the observed positions.
ComplexSignal observe(const ComplexSignal& signal, const SamplingMask& mask, double sigma_e,
                      Rng& rng);

/// E[t, k] = w_k^t for t < rows.
CMatrix vandermonde(const SpectralModel& model, Index rows);

/// Deterministic 64-bit seed derivation (splitmix64 finalizer chain).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace hscs
