#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hscs {

/// Outcome of one randomized property check.
struct PropertyCheck {
    std::string name;
    bool pass = false;
    double worst = 0.0;  // largest observed violation measure
    double tol = 0.0;
    int cases = 0;
    std::string detail;
};

struct SelftestOptions {
    int cases = 20;
    std::uint64_t seed = 1;
    bool corrupt_weights = false;  // negative control: perturb the weights in the adjoint check
};

namespace checks {

/// <G x, M> = <x, G^* M> and <H x, M> = <x, H^* M> on random rectangular lifts.
PropertyCheck adjoint(int cases, std::uint64_t seed, bool corrupt_weights = false);
/// G^* G x = x.
PropertyCheck isometry(int cases, std::uint64_t seed);
/// FFT products against dense lifts.
PropertyCheck fft_vs_dense(int cases, std::uint64_t seed);
/// H x = E diag(d) E^T for synthesized models.
PropertyCheck vandermonde_factorization(int cases, std::uint64_t seed);
/// H^* H x = w .* x.
PropertyCheck weights_identity(int cases, std::uint64_t seed);
/// Truncated Takagi error matches the optimal rank-r error.
PropertyCheck takagi(int cases, std::uint64_t seed);
/// Gradients of both losses against central differences.
PropertyCheck gradients(int cases, std::uint64_t seed);
/// Matrix-free losses against dense evaluation.
PropertyCheck loss_oracle(int cases, std::uint64_t seed);
/// dist_P^2 <= 2 min_Q ||Z - Z_star Q||^2 <= (sqrt 2 + 1)/sigma_r ||M - M_star||^2.
PropertyCheck lemma4(int cases, std::uint64_t seed);
/// First-order optimality gap of reported alignments.
PropertyCheck alignment_gap(int cases, std::uint64_t seed);
/// Reported alignment residual never exceeds the objective at sampled complex orthogonal Q.
PropertyCheck complex_orthogonal_feasibility(int cases, int samples, std::uint64_t seed);
/// ||x_hat - x|| <= ||Z Z^T - M_star||_F for dense lifts.
PropertyCheck vector_error_bound(int cases, std::uint64_t seed);

}  // namespace checks

std::vector<PropertyCheck> run_selftest(const SelftestOptions& opts = {});

/// "PASS name (worst w, tol t, cases c)".
std::string format(const PropertyCheck& c);

}  // namespace hscs
