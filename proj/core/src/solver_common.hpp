#pragma once

#include <chrono>
#include <vector>

#include "hankel_scs/shgd.hpp"

namespace hscs::detail {

using Clock = std::chrono::steady_clock;

inline double ms_since(Clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

/// Observations after optional zero padding.
struct PaddedProblem {
    Index original_n = 0;
    ComplexSignal observed;  // unweighted, zero-filled, padded length
    SamplingMask mask;
};

/// Appends a single zero sample when `make_odd` is set and n is even.
PaddedProblem pad_problem(const ComplexSignal& observed, const SamplingMask& mask, bool make_odd);

/// Partition of Omega into parts.size() subsets of (near) equal size: a random
/// permutation dealt round-robin.
std::vector<SamplingMask> split_mask(const SamplingMask& mask, int parts, std::uint64_t seed);

/// Mask used at iteration k (1-based) and for the initialization (k = 0).
struct SplitSchedule {
    std::vector<SamplingMask> parts;
    const SamplingMask* full = nullptr;

    const SamplingMask& init_mask() const { return parts.empty() ? *full : parts.front(); }
    const SamplingMask& iteration_mask(int k) const
    {
        if (parts.empty()) return *full;
        const auto K = parts.size() - 1;
        return parts[1 + static_cast<std::size_t>(k - 1) % K];
    }
};

SplitSchedule make_schedule(const SolverConfig& cfg, const SamplingMask& mask);

/// Estimate n ||U||_{2,inf}^2 / (2r), clamped to >= 1.
double estimate_mu(const CMatrix& U, Index n);

bool all_finite(const CMatrix& M);

/// Z^H Z through a Hermitian rank update.
CMatrix gram(const CMatrix& Z);

}  // namespace hscs::detail
