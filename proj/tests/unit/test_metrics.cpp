#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <numbers>

#include "common.hpp"
#include "doctest.h"
#include "hankel_scs/hankel_ops.hpp"
#include "hankel_scs/lowrank.hpp"
#include "hankel_scs/metrics.hpp"
#include "hankel_scs/selftest.hpp"

using namespace hscs;
using testing_util::randn;
using testing_util::randv;

TEST_CASE("relative error")
{
    Rng rng(1);
    const ComplexSignal x = randv(20, rng);
    CHECK(rel_error(x, x) == 0.0);
    CHECK(rel_error(ComplexSignal::Zero(20), x) == doctest::Approx(1.0));
    CHECK(rel_error(1.001 * x, x) == doctest::Approx(1e-3));
    CHECK_THROWS_AS(rel_error(x, ComplexSignal::Zero(20)), InvalidArgument);
    CHECK_THROWS_AS(rel_error(x.head(3), x), InvalidArgument);
}

TEST_CASE("real orthogonal Procrustes")
{
    Rng rng(2);
    const CMatrix Zs = randn(15, 3, rng);
    const Procrustes self = procrustes_real_orth(Zs, Zs);
    CHECK(self.dist <= 1e-12);
    CHECK((self.Q - RMatrix::Identity(3, 3)).norm() <= 1e-12);

    const RMatrix R = Eigen::HouseholderQR<RMatrix>(RMatrix::Random(3, 3)).householderQ();
    const Procrustes rot = procrustes_real_orth(Zs * R.cast<cplx>(), Zs);
    CHECK(rot.dist <= 1e-10);
}

TEST_CASE("Procrustes matches brute force over rotations and reflections for r = 2")
{
    Rng rng(3);
    for (int t = 0; t < 5; ++t) {
        const CMatrix Zs = randn(8, 2, rng);
        const CMatrix Z = randn(8, 2, rng);
        const double closed = procrustes_real_orth(Z, Zs).dist;
        double best = 1e300;
        auto eval = [&](double th, bool reflect) {
            RMatrix Q(2, 2);
            Q << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
            if (reflect) Q.col(1) *= -1.0;
            return (Z - Zs * Q.cast<cplx>()).norm();
        };
        double arg = 0.0;
        bool refl = false;
        for (int k = 0; k < 3600; ++k)
            for (bool rf : {false, true}) {
                const double th = 2.0 * std::numbers::pi * k / 3600.0;
                const double v = eval(th, rf);
                if (v < best) {
                    best = v;
                    arg = th;
                    refl = rf;
                }
            }
        double h = 2.0 * std::numbers::pi / 3600.0;
        for (int it = 0; it < 60; ++it) {
            const double a = eval(arg - h, refl), b = eval(arg + h, refl);
            if (a < best) {
                best = a;
                arg -= h;
            } else if (b < best) {
                best = b;
                arg += h;
            } else {
                h *= 0.5;
            }
        }
        CHECK(std::abs(closed - best) <= 1e-6);
    }
}

TEST_CASE("alignment over invertible matrices")
{
    Rng rng(4);
    const CMatrix Zs = randn(20, 3, rng);
    const Alignment self = dist_P_upper(Zs, Zs);
    CHECK(self.residual <= 1e-10);
    CHECK((self.P - CMatrix::Identity(3, 3)).norm() <= 1e-8);

    const CMatrix Q = random_complex_orthogonal(3, 0.3, rng);
    const Alignment co = dist_P_upper(Zs * Q, Zs);
    CHECK(co.residual <= 1e-8);
    CHECK(co.converged);
    CHECK_FALSE(co.singular);

    const CMatrix E = randn(20, 3, rng);
    const CMatrix M = Zs * Zs.transpose();
    const double sr = Eigen::JacobiSVD<CMatrix>(M).singularValues()(2);
    const CMatrix Ep = E * (0.01 * std::sqrt(sr) / E.norm());
    const Alignment pert = dist_P_upper(Zs + Ep, Zs);
    CHECK(pert.residual <= std::sqrt(2.0) * Ep.norm() * (1.0 + 1e-3));
}

TEST_CASE("alignment residual shrinks like sqrt(2) times the perturbation")
{
    Rng rng(5);
    const CMatrix Zs = randn(20, 3, rng);
    const CMatrix E = randn(20, 3, rng);
    double prev = 0.0;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
        const Alignment al = dist_P_upper(Zs + eps * E, Zs);
        const double ratio = al.residual / (eps * E.norm());
        CHECK(ratio <= std::sqrt(2.0) * 1.001);
        if (prev > 0.0) CHECK(ratio >= 0.0);
        prev = ratio;
    }
}

TEST_CASE("complex orthogonal generator")
{
    Rng rng(6);
    const CMatrix Q0 = random_complex_orthogonal(4, 0.0, rng);
    CHECK(std::abs(Q0.imag().norm()) <= 1e-14);
    CHECK(Eigen::JacobiSVD<CMatrix>(Q0).singularValues()(0) == doctest::Approx(1.0));
    for (double s : {0.5, 2.0, 5.0}) {
        const CMatrix Q = random_complex_orthogonal(3, s, rng);
        CHECK((Q * Q.transpose() - CMatrix::Identity(3, 3)).norm() <= 1e-10);
        CHECK((Q.transpose() * Q - CMatrix::Identity(3, 3)).norm() <= 1e-10);
    }
    // W = t S in two dimensions: cosh t I + i sinh t S up to basis, unbounded norm.
    RMatrix S(2, 2);
    S << 0, 1, -1, 0;
    double last = 0.0;
    for (double t : {0.5, 2.0, 8.0}) {
        const CMatrix Q = complex_orthogonal(RMatrix::Identity(2, 2), t * S);
        CMatrix expect(2, 2);
        expect << std::cosh(t), cplx(0, std::sinh(t)), cplx(0, -std::sinh(t)), std::cosh(t);
        CHECK((Q - expect).norm() <= 1e-10 * expect.norm());
        const double nrm = Eigen::JacobiSVD<CMatrix>(Q).singularValues()(0);
        CHECK(nrm > last);
        last = nrm;
    }
    CHECK(last > 1000.0);
}

TEST_CASE("incoherence")
{
    const Index ns = 16, r = 2, n = 2 * ns - 1;
    CMatrix U = CMatrix::Identity(ns, r);
    CHECK(incoherence(U, n) == doctest::Approx(static_cast<double>(n) / (2.0 * r)));

    CMatrix F(ns, r);
    for (Index j = 0; j < r; ++j)
        for (Index i = 0; i < ns; ++i)
            F(i, j) = std::exp(cplx(0.0, 2.0 * std::numbers::pi * (j + 1) * i / ns)) / std::sqrt(double(ns));
    CHECK(incoherence(F, n) == doctest::Approx(static_cast<double>(n) / (2.0 * ns)));
    CHECK_THROWS_AS(incoherence(2.0 * U, n), InvalidArgument);

    Rng rng(7);
    for (int t = 0; t < 10; ++t) {
        ModelOptions mo;
        mo.min_sep = 2.0 / 127.0;
        const ComplexSignal x = synthesize(random_model(127, 4, mo, rng));
        const SvdResult s = trunc_svd(LinearOperator::hankel(x, HankelDims::square(127)), 4, 1);
        CHECK(incoherence(s.U, 127) <= 10.0);
    }
}

TEST_CASE("inequality chain and alignment properties")
{
    Rng rng(8);
    // M = M_star.
    const CMatrix A = randn(20, 3, rng);
    const CMatrix Ms = A * A.transpose();
    const TakagiFactor tk = takagi_dense(Ms);
    const CMatrix Zs = tk.U.leftCols(3) * tk.sigma.head(3).cwiseSqrt().cast<cplx>().asDiagonal();
    const Lemma4Report same = lemma4_check(Zs, Zs, Ms, Ms);
    CHECK(same.pass);
    CHECK(same.left <= 1e-18);
    CHECK(same.middle <= 1e-18);
    CHECK(same.right <= 1e-18);

    const CMatrix M = 1.01 * Ms;
    const Lemma4Report scaled = lemma4_check(std::sqrt(1.01) * Zs, Zs, M, Ms);
    CHECK(scaled.pass);
    CHECK(scaled.middle < scaled.right);

    for (const PropertyCheck& c : {checks::lemma4(30, 9), checks::alignment_gap(10, 10),
                                   checks::complex_orthogonal_feasibility(5, 20, 11),
                                   checks::vector_error_bound(20, 12)}) {
        INFO(format(c));
        CHECK(c.pass);
    }
}
