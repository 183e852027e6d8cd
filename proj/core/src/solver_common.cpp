#include "solver_common.hpp"

#include <algorithm>
#include <numeric>

namespace hscs::detail {

PaddedProblem pad_problem(const ComplexSignal& observed, const SamplingMask& mask, bool make_odd)
{
    require(observed.size() >= 1, "recover: empty observation");
    require(observed.size() == mask.n(), "recover: mask length does not match the signal");
    require(observed.allFinite(), "recover: observation contains NaN or Inf");
    const Index n = observed.size();
    if (!make_odd || n % 2 == 1) return {n, observed, mask};
    ComplexSignal padded = ComplexSignal::Zero(n + 1);
    padded.head(n) = observed;
    return {n, std::move(padded), mask.embedded(n + 1)};
}

std::vector<SamplingMask> split_mask(const SamplingMask& mask, int parts, std::uint64_t seed)
{
    require(parts >= 2, "sample splitting needs at least two parts");
    require(mask.m() >= parts, "sample splitting: fewer observations than parts");
    std::vector<Index> order(static_cast<std::size_t>(mask.m()));
    std::iota(order.begin(), order.end(), Index{0});
    Rng rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::vector<Index>> buckets(static_cast<std::size_t>(parts));
    for (std::size_t j = 0; j < order.size(); ++j)
        buckets[j % buckets.size()].push_back(
            mask.indices()[static_cast<std::size_t>(order[j])]);
    std::vector<SamplingMask> out;
    for (auto& b : buckets) {
        std::sort(b.begin(), b.end());
        out.emplace_back(mask.n(), std::move(b), mask.with_replacement());
    }
    return out;
}

SplitSchedule make_schedule(const SolverConfig& cfg, const SamplingMask& mask)
{
    SplitSchedule s;
    s.full = &mask;
    if (cfg.sample_splitting) s.parts = split_mask(mask, cfg.splits + 1, mix_seed(cfg.seed, 0x5b1));
    return s;
}

double estimate_mu(const CMatrix& U, Index n)
{
    const double row2 = U.rowwise().squaredNorm().maxCoeff();
    const double mu = static_cast<double>(n) * row2 / (2.0 * static_cast<double>(U.cols()));
    return std::max(1.0, mu);
}

bool all_finite(const CMatrix& M) { return M.allFinite(); }

CMatrix gram(const CMatrix& Z)
{
    CMatrix H = CMatrix::Zero(Z.cols(), Z.cols());
    H.selfadjointView<Eigen::Lower>().rankUpdate(Z.adjoint());
    return H.selfadjointView<Eigen::Lower>();
}

}  // namespace hscs::detail
