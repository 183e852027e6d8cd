#pragma once

#include <string>

#include "hankel_scs/shgd.hpp"
#include "hankel_scs/signal_model.hpp"

namespace hscs::io {

/// Observed signal: {"n", "observed": [idx...], "samples": [[re, im]...]}.
struct SignalFile {
    ComplexSignal samples;  // zero-filled off the mask
    SamplingMask mask = SamplingMask::full(1);
};

std::string ssig_to_string(const ComplexSignal& samples, const SamplingMask& mask);
SignalFile parse_ssig(const std::string& text);

/// Ground-truth model: {"n", "r", "freqs", "dampings", "amps_re", "amps_im"}.
std::string smodel_to_string(const SpectralModel& model);
SpectralModel parse_smodel(const std::string& text);

/// {"x_hat", "iters", "termination", "history": [...]}; baseline runs also
/// carry "balancing_gap" in every history entry.
std::string result_to_string(const RecoveryResult& res, bool with_balancing_gap);

/// Overrides solver fields from a JSON object. Recognized keys: r, max_iters,
/// tol, step ("backtrack" or "fixed:<eta'>"), eta_prime, projection, mu, eps0,
/// sample_splitting, splits, seed, divergence_factor, balancing_weight.
void apply_config(const std::string& text, SolverConfig& cfg);

/// Parses "backtrack" or "fixed:<eta'>".
StepPolicy parse_step(const std::string& spec);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace hscs::io
