#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>

#include "common.hpp"
#include "doctest.h"
#include "hankel_scs/hankel_ops.hpp"
#include "hankel_scs/lowrank.hpp"
#include "hankel_scs/selftest.hpp"

using namespace hscs;
using testing_util::randn;
using testing_util::randv;

TEST_CASE("truncated svd matches a dense svd")
{
    Rng rng(1);
    const CMatrix A = randn(40, 5, rng) * randn(5, 30, rng) + 1e-3 * randn(40, 30, rng);
    const SvdResult s = trunc_svd(LinearOperator::dense(A), 5, 7);
    const RVector ref = Eigen::JacobiSVD<CMatrix>(A).singularValues();
    CHECK(s.converged);
    for (Index i = 0; i < 5; ++i) CHECK(s.sigma[i] == doctest::Approx(ref[i]).epsilon(1e-10));
    CHECK((s.U.adjoint() * s.U - CMatrix::Identity(5, 5)).norm() < 1e-10);
    CHECK((s.V.adjoint() * s.V - CMatrix::Identity(5, 5)).norm() < 1e-10);
}

TEST_CASE("truncated svd is deterministic for a seed")
{
    Rng rng(2);
    const CMatrix A = randn(30, 30, rng);
    const SvdResult a = trunc_svd(LinearOperator::dense(A), 3, 11);
    const SvdResult b = trunc_svd(LinearOperator::dense(A), 3, 11);
    CHECK((a.U - b.U).norm() == 0.0);
}

TEST_CASE("non-convergence is reported")
{
    Rng rng(3);
    const CMatrix A = randn(60, 60, rng);
    SvdOptions o;
    o.max_iters = 1;
    o.power_iters = 1;
    o.oversample = 0;
    o.tol = 1e-14;
    CHECK_THROWS_AS(trunc_svd(LinearOperator::dense(A), 10, 1, o), SvdNotConverged);
    o.require_convergence = false;
    const SvdResult s = trunc_svd(LinearOperator::dense(A), 10, 1, o);
    CHECK_FALSE(s.converged);
    CHECK(s.residual > 0.0);
    CHECK_THROWS_AS(trunc_svd(LinearOperator::dense(A), 61, 1, o), InvalidArgument);
}

TEST_CASE("dense Takagi reconstructs symmetric matrices")
{
    Rng rng(4);
    for (int t = 0; t < 10; ++t) {
        const CMatrix B = randn(8, 8, rng);
        const CMatrix S = B + B.transpose();
        const TakagiFactor tk = takagi_dense(S);
        CHECK((tk.reconstruct() - S).norm() < 1e-10 * S.norm());
        CHECK((tk.U.adjoint() * tk.U - CMatrix::Identity(8, 8)).norm() < 1e-10);
        CHECK((tk.factor() * tk.factor().transpose() - S).norm() < 1e-10 * S.norm());
    }
}

TEST_CASE("dense Takagi with repeated singular values")
{
    Rng rng(5);
    const CMatrix Q = Eigen::HouseholderQR<CMatrix>(randn(6, 6, rng)).householderQ();
    RVector s(6);
    s << 3, 3, 3, 1, 1, 0.5;
    const CMatrix S = Q * s.cast<cplx>().asDiagonal() * Q.transpose();
    const TakagiFactor tk = takagi_dense(S);
    CHECK((tk.reconstruct() - S).norm() < 1e-10 * S.norm());
}

TEST_CASE("truncated Takagi attains the optimal error")
{
    const PropertyCheck c = checks::takagi(20, 9);
    INFO(format(c));
    CHECK(c.pass);
}

TEST_CASE("truncated Takagi rejects non-symmetric operators")
{
    Rng rng(6);
    CHECK_THROWS_AS(takagi_truncated(LinearOperator::dense(randn(10, 10, rng)), 2, 1), InvalidArgument);
}

TEST_CASE("spectral initialization from full noiseless data is exact")
{
    Rng rng(7);
    ModelOptions mo;
    mo.min_sep = 2.0 / 63.0;
    const SpectralModel m = random_model(63, 3, mo, rng);
    const ComplexSignal x = synthesize(m);
    const SamplingMask full = SamplingMask::full(63);
    SvdOptions o;
    const SpectralInit init = spectral_init(apply_D(x), full, 3, 1, o);
    const CMatrix H = lift_dense(x);
    CHECK((init.Z0 * init.Z0.transpose() - H).norm() < 1e-8 * H.norm());
    CHECK(init.sigma1 == doctest::Approx(Eigen::JacobiSVD<CMatrix>(H).singularValues()(0)));
}

TEST_CASE("spectral initialization rejects excessive rank")
{
    SpectralModel m;
    m.n = 31;
    m.freqs = {0.2};
    m.dampings = {0.0};
    m.amps = {1.0};
    const ComplexSignal x = synthesize(m);
    CHECK_THROWS_AS(spectral_init(apply_D(x), SamplingMask::full(31), 3, 1), NumericalError);
}
