#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hankel_scs/lowrank.hpp"
#include "hankel_scs/signal_model.hpp"
#include "hankel_scs/types.hpp"

namespace hscs {

/// eta = eta_prime / sigma_1(M0) for every iteration.
struct FixedStep {
    double eta_prime = 0.75;
};

/// Armijo backtracking starting from eta0_scale / sigma_1(M0).
struct Backtracking {
    double beta = 0.5;
    double c_armijo = 1e-4;
    double eta0_scale = 0.75;
    int max_halvings = 30;
};

using StepPolicy = std::variant<FixedStep, Backtracking>;

/// Called after every iteration with the current estimate (original length,
/// unweighted domain). Returning true stops the solver.
using IterationMonitor = std::function<bool(int iteration, const ComplexSignal& x)>;

struct SolverConfig {
    Index r = 1;
    int max_iters = 1000;
    double rel_change_tol = 1e-7;
    StepPolicy step = Backtracking{};
    bool projection = true;
    std::optional<double> mu;       // incoherence proxy; estimated from M0 when unset
    double eps0 = 0.1;              // sigma = sigma_1(M0) / (1 - eps0)
    bool sample_splitting = false;
    int splits = 1;                 // K: Omega is partitioned into K + 1 parts
    std::uint64_t seed = 0;
    double divergence_factor = 1e6;
    double balancing_weight = 1.0 / 16.0;  // asymmetric baseline only
    SvdOptions init_svd = spectral_init_svd_options();
    IterationMonitor monitor;

    void validate() const;
};

enum class Termination { tol_reached, max_iters, diverged, stalled, monitor_stop };

std::string to_string(Termination t);

struct IterationRecord {
    int k = 0;
    double loss = 0.0;
    double rel_change = 0.0;
    double step = 0.0;
    double ms = 0.0;
    double balancing_gap = 0.0;  // asymmetric baseline only
};

struct RecoveryResult {
    ComplexSignal x_hat;             // original length, unweighted domain
    Factor Z_final;                  // SHGD factor, or the left factor of the baseline
    std::optional<CMatrix> right_factor;
    int iters = 0;
    std::vector<IterationRecord> history;
    Termination termination = Termination::max_iters;
    double sigma1_M0 = 0.0;
    double mu = 0.0;
    double radius = 0.0;
    double init_ms = 0.0;
    double total_ms = 0.0;
    std::uint64_t column_passes = 0;  // convolution-type column passes in the loop
    std::uint64_t transforms = 0;     // FFTs executed in the loop
};

/// f(Z) = 1/(4p) <P_Omega(G^*(Z Z^T) - y), G^*(Z Z^T) - y> + 1/4 ||(I - G G^*)(Z Z^T)||_F^2.
/// `y_obs` is the weighted signal zero-filled off the mask.
double loss(const Factor& Z, const ComplexSignal& y_obs, const SamplingMask& mask, double p);

/// Wirtinger gradient G(w) conj(Z) + Z (Z^T conj(Z)), with
/// w = p^{-1} P_Omega(G^*(Z Z^T) - y) - G^*(Z Z^T). Satisfies
/// d/dt f(Z + t Delta)|_{t=0} = Re <grad, Delta>.
Factor grad(const Factor& Z, const ComplexSignal& y_obs, const SamplingMask& mask, double p);

/// Rescales rows with norm above `radius` onto the sphere of that radius.
Factor project_C(const Factor& Z, double radius);

/// 2 sqrt(mu r sigma / n).
double projection_radius(double mu, Index r, double sigma, Index n);

double fixed_step(double sigma1_M0, double eta_prime);

/// Full symmetric projected gradient descent from zero-filled observations
/// of the unweighted signal.
RecoveryResult recover(const ComplexSignal& observed, const SamplingMask& mask,
                       const SolverConfig& config);

}  // namespace hscs
