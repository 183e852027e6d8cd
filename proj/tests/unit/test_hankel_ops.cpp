#include <cmath>

#include "common.hpp"
#include "doctest.h"
#include "hankel_scs/fft.hpp"
#include "hankel_scs/hankel_ops.hpp"
#include "hankel_scs/selftest.hpp"

using namespace hscs;
using testing_util::randn;
using testing_util::randv;

TEST_CASE("lift shapes")
{
    const HankelDims sq = HankelDims::square(127);
    CHECK(sq.rows == 64);
    CHECK(sq.cols == 64);
    CHECK_THROWS_AS(HankelDims::square(126), InvalidArgument);
    const HankelDims b = HankelDims::balanced(126);
    CHECK(b.rows == 63);
    CHECK(b.cols == 64);
    CHECK(b.length() == 126);
}

TEST_CASE("skew-diagonal weights")
{
    const RVector w = skew_weights(HankelDims::square(7));
    const double expect[] = {1, 2, 3, 4, 3, 2, 1};
    for (int a = 0; a < 7; ++a) CHECK(w[a] == expect[a]);
    const RVector wr = skew_weights({2, 4});
    const double er[] = {1, 2, 2, 2, 1};
    for (int a = 0; a < 5; ++a) CHECK(wr[a] == er[a]);
}

TEST_CASE("dense lift and adjoint on a small example")
{
    ComplexSignal x(5);
    x << 1.0, 2.0, 3.0, 4.0, 5.0;
    const CMatrix H = lift_dense(x);
    CHECK(H.rows() == 3);
    CHECK(H(0, 2) == cplx(3.0));
    CHECK(H(2, 2) == cplx(5.0));
    CHECK(H(1, 0) == cplx(2.0));
    const ComplexSignal back = hankel_adjoint_dense(H);
    const double w[] = {1, 2, 3, 2, 1};
    for (int a = 0; a < 5; ++a) CHECK(std::abs(back[a] - w[a] * x[a]) < 1e-14);
}

TEST_CASE("weighting round trip")
{
    Rng rng(1);
    const ComplexSignal x = randv(31, rng);
    CHECK((apply_D_inv(apply_D(x)) - x).norm() < 1e-13);
    const HankelDims dims{10, 22};
    CHECK((apply_D(apply_D_inv(x, dims), dims) - x).norm() < 1e-13);
}

TEST_CASE("p_omega counts multiplicity")
{
    ComplexSignal x = ComplexSignal::Ones(4);
    const SamplingMask mask(4, {1, 1, 3}, true);
    const ComplexSignal y = p_omega(x, mask);
    CHECK(y[0] == cplx(0.0));
    CHECK(y[1] == cplx(2.0));
    CHECK(y[3] == cplx(1.0));
}

TEST_CASE("structured products against dense oracles")
{
    const PropertyCheck c = checks::fft_vs_dense(30, 7);
    INFO(format(c));
    CHECK(c.pass);
}

TEST_CASE("adjoint, isometry, weights identity, Vandermonde factorization")
{
    for (const PropertyCheck& c :
         {checks::adjoint(30, 1), checks::isometry(30, 2), checks::weights_identity(30, 3),
          checks::vandermonde_factorization(30, 4)}) {
        INFO(format(c));
        CHECK(c.pass);
    }
}

TEST_CASE("corrupted weights break the adjoint identity")
{
    const PropertyCheck c = checks::adjoint(5, 1, /*corrupt_weights=*/true);
    CHECK_FALSE(c.pass);
}

TEST_CASE("operation counters")
{
    Rng rng(3);
    const Index ns = 20, r = 3;
    const Factor Z = randn(ns, r, rng);
    const ComplexSignal v = randv(2 * ns - 1, rng);
    const auto before = fft::counters();
    (void)gstar_gram(Z);
    CHECK(fft::counters().column_passes - before.column_passes == static_cast<std::uint64_t>(r));
    (void)g_apply_times_conj(v, Z);
    CHECK(fft::counters().column_passes - before.column_passes == static_cast<std::uint64_t>(2 * r));
    CHECK(fft::counters().transforms > before.transforms);
}

TEST_CASE("transform length")
{
    CHECK(fft::transform_length(1) == 1);
    CHECK(fft::transform_length(127) == 128);
    CHECK(fft::transform_length(129) == 256);
}

TEST_CASE("argument checks")
{
    Rng rng(4);
    const ComplexSignal u = randv(9, rng);
    CHECK_THROWS_AS(hankel_times(u, {5, 5}, randn(4, 1, rng)), InvalidArgument);
    CHECK_THROWS_AS(hankel_times(u, {4, 5}, randn(4, 1, rng)), InvalidArgument);
    CHECK_THROWS_AS(gstar_cross(randn(4, 2, rng), randn(4, 3, rng)), InvalidArgument);
}
