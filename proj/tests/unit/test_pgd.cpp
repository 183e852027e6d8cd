#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

#include "common.hpp"
#include "doctest.h"
#include "hankel_scs/hankel_ops.hpp"
#include "hankel_scs/lowrank.hpp"
#include "hankel_scs/metrics.hpp"
#include "hankel_scs/pgd.hpp"

using namespace hscs;
using testing_util::randn;
using testing_util::randv;

namespace {

ComplexSignal model_signal(Index n, Index r, std::uint64_t seed)
{
    Rng rng(seed);
    ModelOptions mo;
    mo.min_sep = 1.5 / static_cast<double>(n);
    return synthesize(random_model(n, r, mo, rng));
}

}  // namespace

TEST_CASE("baseline loss is zero at a balanced exact pair")
{
    for (Index n : {31, 32}) {
        const ComplexSignal x = model_signal(n, 3, 1);
        const HankelDims dims = HankelDims::balanced(n);
        const CMatrix H = lift_dense(x, dims);
        Eigen::JacobiSVD<CMatrix> svd(H, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const RVector s = svd.singularValues().head(3).cwiseSqrt();
        const FactorPair pr{svd.matrixU().leftCols(3) * s.asDiagonal(),
                            svd.matrixV().leftCols(3) * s.asDiagonal()};
        const ComplexSignal y = apply_D(x, dims);
        const SamplingMask full = SamplingMask::full(n);
        CHECK(pgd_loss(pr, y, full, 1.0) <= 1e-20 * std::pow(y.squaredNorm(), 2) + 1e-18 * y.squaredNorm());
    }
}

TEST_CASE("baseline loss at zero factors")
{
    Rng rng(2);
    const SamplingMask mask = uniform_mask(40, 15, false, rng);
    const ComplexSignal y = p_omega(randv(40, rng), mask);
    const FactorPair zero{CMatrix::Zero(20, 2), CMatrix::Zero(21, 2)};
    const double p = mask.ratio();
    CHECK(pgd_loss(zero, y, mask, p) == doctest::Approx(y.squaredNorm() / (4.0 * p)));
}

TEST_CASE("baseline rejects mismatched factors")
{
    Rng rng(3);
    const SamplingMask mask = SamplingMask::full(40);
    const ComplexSignal y = randv(40, rng);
    const FactorPair bad{randn(20, 2, rng), randn(21, 3, rng)};
    CHECK_THROWS_AS(pgd_loss(bad, y, mask, 1.0), InvalidArgument);
    const FactorPair wrong_len{randn(20, 2, rng), randn(20, 2, rng)};
    CHECK_THROWS_AS(pgd_loss(wrong_len, y, mask, 1.0), InvalidArgument);
}

TEST_CASE("baseline recovers full noiseless data")
{
    for (Index n : {127, 126}) {
        const ComplexSignal x = model_signal(n, 4, 4);
        SolverConfig cfg;
        cfg.r = 4;
        const RecoveryResult res = pgd_recover(x, SamplingMask::full(n), cfg);
        CHECK(rel_error(res.x_hat, x) <= 1e-6);
        REQUIRE(res.right_factor.has_value());
        CHECK(res.history.back().balancing_gap <= 1e-3 * res.sigma1_M0);
    }
}

TEST_CASE("baseline counts 3r column passes per fixed-step iteration")
{
    Rng rng(5);
    const ComplexSignal x = model_signal(127, 4, 5);
    const SamplingMask mask = uniform_mask(127, 76, false, rng);
    SolverConfig cfg;
    cfg.r = 4;
    cfg.step = FixedStep{};
    cfg.max_iters = 10;
    cfg.rel_change_tol = 0.0;
    const RecoveryResult res = pgd_recover(observe(x, mask, 0.0, rng), mask, cfg);
    CHECK(res.iters == 10);
    CHECK(res.column_passes == static_cast<std::uint64_t>(3 * 4 * 10));
}

TEST_CASE("balancing gap decays on partial data")
{
    Rng rng(6);
    const ComplexSignal x = model_signal(127, 4, 6);
    const SamplingMask mask = uniform_mask(127, 76, false, rng);
    SolverConfig cfg;
    cfg.r = 4;
    const RecoveryResult res = pgd_recover(observe(x, mask, 0.0, rng), mask, cfg);
    CHECK(rel_error(res.x_hat, x) <= 1e-3);
    CHECK(res.history.back().balancing_gap <= 1e-3 * res.sigma1_M0);
}
