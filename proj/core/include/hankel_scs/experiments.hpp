#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hankel_scs/shgd.hpp"
#include "hankel_scs/signal_model.hpp"

namespace hscs {

enum class SolverKind { shgd, pgd };

std::string to_string(SolverKind s);
SolverKind parse_solver(const std::string& s);

/// Runs the selected solver.
RecoveryResult run_solver(SolverKind kind, const ComplexSignal& observed, const SamplingMask& mask,
                          const SolverConfig& cfg);

enum class ExperimentKind { phase, timing, noise };

std::string to_string(ExperimentKind k);

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::phase;
    Index n = 127;
    std::vector<Index> r_values = {4};
    std::vector<double> p_values = {0.6};       // phase
    std::vector<Index> m_values;                // noise, timing
    std::vector<double> sigma_values;           // noise
    std::vector<double> targets;                // timing
    std::vector<Index> n_values;                // timing: scaling mode when non-empty
    int trials = 20;
    int repetitions = 3;                        // timing: median over repetitions
    std::uint64_t seed = 0;
    SolverKind solver = SolverKind::shgd;
    SolverConfig config;
    std::optional<double> min_sep;              // in units of 1/n
    double success_tol = 1e-3;
    int threads = 1;
    bool record_timing = true;                  // false writes 0 in wall-time columns

    void validate() const;
};

/// Desk-scale defaults for each experiment kind.
ExperimentSpec default_spec(ExperimentKind kind);

/// Problem instance for one trial: seeds, model, mask and observation.
struct Trial {
    std::uint64_t seed = 0;
    SpectralModel model;
    ComplexSignal signal;
    SamplingMask mask = SamplingMask::full(1);
    ComplexSignal observed;
};

/// Deterministic instance; `seed` fully determines the output.
Trial make_trial(Index n, Index r, Index m, double sigma_e, std::optional<double> min_sep,
                 std::uint64_t seed);

/// Per-trial seed: mix of the master seed, the cell coordinates and the trial index.
std::uint64_t trial_seed(std::uint64_t master, Index r, double cell, int trial);

/// Runs fn(0..count-1) on `threads` workers. Exceptions are rethrown after all
/// workers have stopped.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

struct Metadata {
    std::string git_hash;
    std::string created;   // UTC timestamp, excluded from the determinism contract
    std::string hostname;
    unsigned hardware_threads = 0;
    std::string compiler;
};

Metadata collect_metadata();

struct PhaseCell {
    Index r = 0;
    double p = 0.0;
    Index m = 0;
    int successes = 0;
    int trials = 0;
    double mean_iters = 0.0;
    double mean_ms = 0.0;

    double rate() const { return trials > 0 ? static_cast<double>(successes) / trials : 0.0; }
};

struct GridResult {
    std::vector<PhaseCell> cells;  // r-major, p-minor
    Metadata meta;

    const PhaseCell& at(Index r, double p) const;
};

GridResult run_phase(const ExperimentSpec& spec);

struct TimingRow {
    std::string solver;   // shgd, pgd, ratio, model
    double target = 0.0;
    int converged = 0;
    int trials = 0;
    double mean_ms = 0.0;
    double mean_iters = 0.0;
    std::optional<double> ratio;
    double passes_per_iter = 0.0;
    double transforms_per_iter = 0.0;
};

struct ScalingRow {
    Index n = 0;
    std::string solver;
    int converged = 0;
    int trials = 0;
    double mean_ms = 0.0;
    double mean_iters = 0.0;
    double ms_per_iter = 0.0;
};

struct TimingResult {
    std::vector<TimingRow> rows;
    std::vector<ScalingRow> scaling;
    double fft_constant = 0.0;  // measured C in the per-column cost model
    Metadata meta;
};

/// Time-to-target for matched SHGD and PGD runs, or the scaling sweep when
/// spec.n_values is non-empty.
TimingResult run_timing(const ExperimentSpec& spec);

struct NoiseRow {
    double sigma_e = 0.0;
    double snr_db = 0.0;
    Index m = 0;
    int trials = 0;
    int failures = 0;
    double mean_rmse = 0.0;  // mean of ||x_hat - x|| / ||x||
};

struct NoiseResult {
    std::vector<NoiseRow> rows;
    Metadata meta;
};

NoiseResult run_noise(const ExperimentSpec& spec);

std::string to_csv(const GridResult& res);
std::string to_csv(const TimingResult& res);
std::string to_csv(const NoiseResult& res);

/// JSON sidecar: metadata plus the full spec echo.
std::string sidecar_json(const ExperimentSpec& spec, const Metadata& meta);

}  // namespace hscs
