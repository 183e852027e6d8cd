#include "hankel_scs/selftest.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "hankel_scs/hankel_ops.hpp"
#include "hankel_scs/lowrank.hpp"
#include "hankel_scs/metrics.hpp"
#include "hankel_scs/pgd.hpp"
#include "hankel_scs/shgd.hpp"
#include "hankel_scs/signal_model.hpp"

namespace hscs {

namespace {

CMatrix randn(Index rows, Index cols, Rng& rng)
{
    std::normal_distribution<double> N(0.0, 1.0);
    CMatrix X(rows, cols);
    for (Index i = 0; i < X.size(); ++i) {
        const double re = N(rng);
        const double im = N(rng);
        X.data()[i] = cplx(re, im);
    }
    return X;
}

Index uniform_index(Index lo, Index hi, Rng& rng)
{
    return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

HankelDims random_dims(Rng& rng, Index max_n = 127)
{
    const Index n = uniform_index(2, max_n, rng);
    const Index rows = uniform_index(1, n, rng);
    return {rows, n - rows + 1};
}

Index random_odd(Rng& rng, Index lo, Index hi)
{
    Index n = uniform_index(lo, hi, rng);
    if (n % 2 == 0) ++n;
    return std::min(n, hi % 2 == 1 ? hi : hi - 1);
}

double rel(double err, double scale) { return err / std::max(scale, 1e-300); }

PropertyCheck make(const std::string& name, double tol, int cases)
{
    PropertyCheck c;
    c.name = name;
    c.tol = tol;
    c.cases = cases;
    return c;
}

void finish(PropertyCheck& c) { c.pass = c.worst <= c.tol && std::isfinite(c.worst); }

// Dense f for the symmetric loss.
double dense_loss(const Factor& Z, const ComplexSignal& y, const SamplingMask& mask, double p)
{
    const HankelDims dims = HankelDims::square(y.size());
    const CMatrix M = Z * Z.transpose();
    const ComplexSignal g = apply_D_inv(hankel_adjoint_dense(M), dims);
    const RVector mult = mask.multiplicity();
    const double data = (mult.array() * (g - y).array().abs2()).sum() / (4.0 * p);
    const double pen = (M - lift_dense(apply_D_inv(g, dims), dims)).squaredNorm() / 4.0;
    return data + pen;
}

double dense_pgd_loss(const FactorPair& pr, const ComplexSignal& y, const SamplingMask& mask,
                      double p, double lambda)
{
    const HankelDims dims = pr.dims();
    const CMatrix M = pr.Z_U * pr.Z_V.adjoint();
    const ComplexSignal g = apply_D_inv(hankel_adjoint_dense(M), dims);
    const RVector mult = mask.multiplicity();
    const double data = (mult.array() * (g - y).array().abs2()).sum() / (4.0 * p);
    const double pen = (M - lift_dense(apply_D_inv(g, dims), dims)).squaredNorm() / 4.0;
    const CMatrix B = pr.Z_U.adjoint() * pr.Z_U - pr.Z_V.adjoint() * pr.Z_V;
    return data + pen + lambda * B.squaredNorm();
}

struct SymmetricPair {
    CMatrix M, M_star, Z, Z_star;
};

SymmetricPair random_symmetric_pair(Index ns, Index r, Rng& rng)
{
    auto takagi_rank = [&](const CMatrix& S) {
        const TakagiFactor t = takagi_dense(S);
        const CMatrix U = t.U.leftCols(r);
        const RVector s = t.sigma.head(r);
        return std::pair<CMatrix, CMatrix>{U * s.cast<cplx>().asDiagonal() * U.transpose(),
                                           U * s.cwiseSqrt().cast<cplx>().asDiagonal()};
    };
    const CMatrix A = randn(ns, r, rng);
    const CMatrix S_star = A * A.transpose();
    const bool independent = std::bernoulli_distribution(0.5)(rng);
    const double eps = std::pow(10.0, std::uniform_real_distribution<double>(-4.0, 0.0)(rng));
    const CMatrix B = randn(ns, ns, rng);
    const CMatrix S = independent ? CMatrix(randn(ns, r, rng) * randn(ns, r, rng).transpose())
                                  : CMatrix(S_star + eps * (B + B.transpose()) * std::sqrt(S_star.norm() / ns));
    const CMatrix Ssym = 0.5 * (S + S.transpose());
    SymmetricPair out;
    std::tie(out.M_star, out.Z_star) = takagi_rank(S_star);
    std::tie(out.M, out.Z) = takagi_rank(Ssym);
    return out;
}

}  // namespace

namespace checks {

PropertyCheck adjoint(int cases, std::uint64_t seed, bool corrupt_weights)
{
    PropertyCheck c = make("adjoint identities", 1e-10, cases);
    Rng rng(seed);
    for (int t = 0; t < cases; ++t) {
        const HankelDims dims = random_dims(rng);
        const ComplexSignal x = randn(dims.length(), 1, rng);
        const CMatrix M = randn(dims.rows, dims.cols, rng);
        RVector w = skew_weights(dims);
        if (corrupt_weights) w[w.size() / 2] *= 1.5;
        const ComplexSignal u = x.cwiseQuotient(w.cwiseSqrt().cast<cplx>());
        const CMatrix Gx = lift_dense(u, dims);
        const ComplexSignal Gs = apply_D_inv(hankel_adjoint_dense(M), dims);
        const cplx lhs = (Gx.conjugate().cwiseProduct(M)).sum();
        const cplx rhs = x.dot(Gs);
        const double scale = Gx.norm() * M.norm();
        c.worst = std::max(c.worst, rel(std::abs(lhs - rhs), scale));

        const cplx lh = (lift_dense(x, dims).conjugate().cwiseProduct(M)).sum();
        const cplx rh = x.dot(hankel_adjoint_dense(M));
        c.worst = std::max(c.worst, rel(std::abs(lh - rh), lift_dense(x, dims).norm() * M.norm()));
    }
    finish(c);
    return c;
}

PropertyCheck isometry(int cases, std::uint64_t seed)
{
    PropertyCheck c = make("normalized lift isometry", 1e-12, cases);
    Rng rng(seed);
    for (int t = 0; t < cases; ++t) {
        const HankelDims dims = random_dims(rng);
        const ComplexSignal x = randn(dims.length(), 1, rng);
        const CMatrix Gx = lift_dense(apply_D_inv(x, dims), dims);
        const ComplexSignal back = apply_D_inv(hankel_adjoint_dense(Gx), dims);
        c.worst = std::max(c.worst, rel((back - x).norm(), x.norm()));
        c.worst = std::max(c.worst, rel(std::abs(Gx.norm() - x.norm()), x.norm()));
    }
    finish(c);
    return c;
}

PropertyCheck fft_vs_dense(int cases, std::uint64_t seed)
{
    PropertyCheck c = make("fft products vs dense", 1e-10, cases);
    Rng rng(seed);
    for (int t = 0; t < cases; ++t) {
        const HankelDims dims = random_dims(rng);
        const Index k = uniform_index(1, 6, rng);
        const ComplexSignal u = randn(dims.length(), 1, rng);
        const CMatrix H = lift_dense(u, dims);
        const CMatrix X = randn(dims.cols, k, rng);
        const CMatrix Y = randn(dims.rows, k, rng);
        const CMatrix HX = H * X;
        const CMatrix HY = H.adjoint() * Y;
        c.worst = std::max(c.worst, rel((hankel_times(u, dims, X) - HX).norm(), H.norm() * X.norm()));
        c.worst = std::max(c.worst,
                           rel((hankel_adjoint_times(u, dims, Y) - HY).norm(), H.norm() * Y.norm()));

        const CMatrix L = randn(dims.rows, k, rng);
        const CMatrix R = randn(dims.cols, k, rng);
        const ComplexSignal gc = apply_D_inv(hankel_adjoint_dense(L * R.adjoint()), dims);
        c.worst = std::max(c.worst, rel((gstar_cross(L, R) - gc).norm(), L.norm() * R.norm()));

        const Index ns = uniform_index(1, 64, rng);
        const Factor Z = randn(ns, k, rng);
        const HankelDims sq{ns, ns};
        const ComplexSignal gg = apply_D_inv(hankel_adjoint_dense(Z * Z.transpose()), sq);
        c.worst = std::max(c.worst, rel((gstar_gram(Z) - gg).norm(), Z.squaredNorm()));
        const ComplexSignal v = randn(sq.length(), 1, rng);
        const CMatrix ref = lift_dense(apply_D_inv(v, sq), sq) * Z.conjugate();
        c.worst = std::max(c.worst, rel((g_apply_times_conj(v, Z) - ref).norm(), v.norm() * Z.norm()));
    }
    finish(c);
    return c;
}

PropertyCheck vandermonde_factorization(int cases, std::uint64_t seed)
{
    PropertyCheck c = make("lift equals E diag(d) E^T", 1e-10, cases);
    Rng rng(seed);
    for (int t = 0; t < cases; ++t) {
        const Index n = random_odd(rng, 5, 127);
        const Index r = uniform_index(1, std::min<Index>(8, (n + 1) / 2), rng);
        ModelOptions mo;
        mo.damped = std::bernoulli_distribution(0.5)(rng);
        mo.damping_hi = mo.damped ? 0.02 : 0.0;
        const SpectralModel model = random_model(n, r, mo, rng);
        const CMatrix H = lift_dense(synthesize(model));
        const CMatrix E = vandermonde(model, (n + 1) / 2);
        CVector d(r);
        for (Index k = 0; k < r; ++k) d[k] = model.amps[static_cast<std::size_t>(k)];
        const CMatrix ref = E * d.asDiagonal() * E.transpose();
        c.worst = std::max(c.worst, rel((H - ref).norm(), H.norm()));
    }
    finish(c);
    return c;
}

PropertyCheck weights_identity(int cases, std::uint64_t seed)
{
    PropertyCheck c = make("H^*H equals D^2", 1e-12, cases);
    Rng rng(seed);
    for (int t = 0; t < cases; ++t) {
        const HankelDims dims = random_dims(rng);
        const ComplexSignal x = randn(dims.length(), 1, rng);
        const ComplexSignal lhs = hankel_adjoint_dense(lift_dense(x, dims));
        const ComplexSignal rhs = skew_weights(dims).cast<cplx>().cwiseProduct(x);
        c.worst = std::max(c.worst, rel((lhs - rhs).norm(), rhs.norm()));
    }
    finish(c);
    return c;
}

PropertyCheck takagi(int cases, std::uint64_t seed)
{
    PropertyCheck c = make("takagi error equals truncated svd error", 1e-8, cases);
    Rng rng(seed);
    for (int t = 0; t < cases; ++t) {
        const Index n = random_odd(rng, 9, 127);
        const Index ns = (n + 1) / 2;
        const Index r = uniform_index(1, std::min<Index>(6, ns - 1), rng);
        ModelOptions mo;
        mo.min_sep = 1.0 / static_cast<double>(n);
        const SpectralModel model = random_model(n, r, mo, rng);
        ComplexSignal x = synthesize(model);
        const double noise = std::bernoulli_distribution(0.5)(rng) ? 1e-3 : 0.0;
        x += noise * x.norm() / std::sqrt(static_cast<double>(n)) * randn(n, 1, rng);
        const CMatrix H = lift_dense(x);
        const TakagiFactor tk = takagi_truncated(LinearOperator::hankel(x, HankelDims::square(n)), r,
                                                 mix_seed(seed, static_cast<std::uint64_t>(t)));
        const RVector s = Eigen::JacobiSVD<CMatrix>(H).singularValues();
        const double optimal = s.tail(s.size() - r).norm();
        const double err = (H - tk.reconstruct()).norm();
        c.worst = std::max(c.worst, rel(std::abs(err - optimal), H.norm()));
        c.worst = std::max(c.worst, rel((tk.U.adjoint() * tk.U - CMatrix::Identity(r, r)).norm(), 1.0));
    }
    finish(c);
    return c;
}

PropertyCheck gradients(int cases, std::uint64_t seed)
{
    PropertyCheck c = make("gradients vs central differences", 1e-5, cases);
    Rng rng(seed);
    for (int t = 0; t < cases; ++t) {
        const Index n = random_odd(rng, 9, 127);
        const Index r = uniform_index(1, 6, rng);
        const Index m = uniform_index(1, n, rng);
        const bool repl = std::bernoulli_distribution(0.3)(rng);
        const SamplingMask mask = uniform_mask(n, m, repl, rng);
        const double p = mask.ratio();
        const ComplexSignal y = p_omega(randn(n, 1, rng), mask);

        const Factor Z = randn((n + 1) / 2, r, rng);
        const Factor D = randn(Z.rows(), r, rng);
        const double h = 1e-4;
        const double fd = (loss(Z + h * D, y, mask, p) - loss(Z - h * D, y, mask, p)) / (2.0 * h);
        const double an = (grad(Z, y, mask, p).adjoint() * D).trace().real();
        c.worst = std::max(c.worst, rel(std::abs(fd - an), std::abs(an)));

        const HankelDims dims = HankelDims::balanced(n);
        const FactorPair pr{randn(dims.rows, r, rng), randn(dims.cols, r, rng)};
        const FactorPair dl{randn(dims.rows, r, rng), randn(dims.cols, r, rng)};
        auto shifted = [&](double s) {
            return FactorPair{pr.Z_U + s * dl.Z_U, pr.Z_V + s * dl.Z_V};
        };
        const ComplexSignal yr = p_omega(randn(n, 1, rng), mask);
        const double fdp =
            (pgd_loss(shifted(h), yr, mask, p) - pgd_loss(shifted(-h), yr, mask, p)) / (2.0 * h);
        const FactorPair gp = pgd_grad(pr, yr, mask, p);
        const double anp = 0.5 * ((gp.Z_U.adjoint() * dl.Z_U).trace().real() +
                                  (gp.Z_V.adjoint() * dl.Z_V).trace().real());
        c.worst = std::max(c.worst, rel(std::abs(fdp - anp), std::abs(anp)));
    }
    finish(c);
    return c;
}

PropertyCheck loss_oracle(int cases, std::uint64_t seed)
{
    PropertyCheck c = make("loss vs dense evaluation", 1e-10, cases);
    Rng rng(seed);
    for (int t = 0; t < cases; ++t) {
        const Index n = random_odd(rng, 5, 63);
        const Index r = uniform_index(1, 5, rng);
        const SamplingMask mask = uniform_mask(n, uniform_index(1, n, rng), false, rng);
        const double p = mask.ratio();
        const ComplexSignal y = p_omega(randn(n, 1, rng), mask);
        const Factor Z = randn((n + 1) / 2, r, rng);
        const double ref = dense_loss(Z, y, mask, p);
        c.worst = std::max(c.worst, rel(std::abs(loss(Z, y, mask, p) - ref), ref));

        const Index ne = uniform_index(4, 63, rng);
        const HankelDims dims = HankelDims::balanced(ne);
        const SamplingMask me = uniform_mask(ne, uniform_index(1, ne, rng), false, rng);
        const ComplexSignal ye = p_omega(randn(ne, 1, rng), me);
        const FactorPair pr{randn(dims.rows, r, rng), randn(dims.cols, r, rng)};
        const double refp = dense_pgd_loss(pr, ye, me, me.ratio(), 1.0 / 16.0);
        c.worst = std::max(c.worst, rel(std::abs(pgd_loss(pr, ye, me, me.ratio()) - refp), refp));
    }
    finish(c);
    return c;
}

PropertyCheck lemma4(int cases, std::uint64_t seed)
{
    PropertyCheck c = make("takagi distance inequality chain", 0.0, cases);
    Rng rng(seed);
    int failures = 0;
    for (int t = 0; t < cases; ++t) {
        const SymmetricPair sp = random_symmetric_pair(20, 3, rng);
        const Lemma4Report rep = lemma4_check(sp.Z, sp.Z_star, sp.M, sp.M_star);
        if (!rep.pass) ++failures;
        c.worst = std::max({c.worst, rep.left - rep.middle - 1e-9, rep.middle - rep.right - 1e-9});
    }
    c.worst = std::max(c.worst, 0.0);
    c.detail = std::to_string(failures) + " failing instances";
    finish(c);
    return c;
}

PropertyCheck alignment_gap(int cases, std::uint64_t seed)
{
    PropertyCheck c = make("alignment first-order gap", 1e-8, cases);
    Rng rng(seed);
    for (int t = 0; t < cases; ++t) {
        const SymmetricPair sp = random_symmetric_pair(20, 3, rng);
        const Alignment al = dist_P_upper(sp.Z, sp.Z_star);
        const double s1 = Eigen::JacobiSVD<CMatrix>(sp.Z_star).singularValues()(0);
        c.worst = std::max(c.worst, al.first_order_gap / (s1 * s1));
        if (al.singular) c.worst = std::numeric_limits<double>::infinity();
    }
    finish(c);
    return c;
}

PropertyCheck complex_orthogonal_feasibility(int cases, int samples, std::uint64_t seed)
{
    PropertyCheck c = make("alignment vs sampled complex orthogonal", 1e-12, cases);
    c.detail = std::to_string(samples) + " samples per instance";
    Rng rng(seed);
    for (int t = 0; t < cases; ++t) {
        const SymmetricPair sp = random_symmetric_pair(20, 3, rng);
        const Alignment al = dist_P_upper(sp.Z, sp.Z_star);
        const double best = al.residual * al.residual;
        for (int q = 0; q < samples; ++q) {
            const double scale = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
            const CMatrix Q = random_complex_orthogonal(3, scale, rng);
            const double val = dist_P_objective(sp.Z, sp.Z_star, Q);
            c.worst = std::max(c.worst, rel(best - val, val + sp.Z_star.squaredNorm()));
        }
    }
    finish(c);
    return c;
}

PropertyCheck vector_error_bound(int cases, std::uint64_t seed)
{
    PropertyCheck c = make("signal error bounded by lifted error", 0.0, cases);
    Rng rng(seed);
    for (int t = 0; t < cases; ++t) {
        const Index n = random_odd(rng, 5, 63);
        const Index r = uniform_index(1, 4, rng);
        const ComplexSignal x = randn(n, 1, rng);
        const Factor Z = randn((n + 1) / 2, r, rng);
        const CMatrix M = Z * Z.transpose();
        const ComplexSignal x_hat = apply_D_inv(gstar_gram(Z));
        const double lhs = (x_hat - x).norm();
        const double rhs = (M - lift_dense(x)).norm();
        c.worst = std::max(c.worst, (lhs - rhs) / std::max(rhs, 1e-300) - 1e-12);
    }
    c.worst = std::max(c.worst, 0.0);
    finish(c);
    return c;
}

}  // namespace checks

std::vector<PropertyCheck> run_selftest(const SelftestOptions& o)
{
    const int n = o.cases;
    std::vector<PropertyCheck> out;
    out.push_back(checks::adjoint(n, mix_seed(o.seed, 1), o.corrupt_weights));
    out.push_back(checks::isometry(n, mix_seed(o.seed, 2)));
    out.push_back(checks::fft_vs_dense(n, mix_seed(o.seed, 3)));
    out.push_back(checks::vandermonde_factorization(n, mix_seed(o.seed, 4)));
    out.push_back(checks::weights_identity(n, mix_seed(o.seed, 5)));
    out.push_back(checks::takagi(n, mix_seed(o.seed, 6)));
    out.push_back(checks::gradients(n, mix_seed(o.seed, 7)));
    out.push_back(checks::loss_oracle(n, mix_seed(o.seed, 8)));
    out.push_back(checks::lemma4(n, mix_seed(o.seed, 9)));
    out.push_back(checks::alignment_gap(n, mix_seed(o.seed, 10)));
    out.push_back(checks::complex_orthogonal_feasibility(n, 20, mix_seed(o.seed, 11)));
    out.push_back(checks::vector_error_bound(n, mix_seed(o.seed, 12)));
    return out;
}

std::string format(const PropertyCheck& c)
{
    std::ostringstream s;
    s << (c.pass ? "PASS " : "FAIL ") << c.name << " (worst " << c.worst << ", tol " << c.tol
      << ", cases " << c.cases << ")";
    if (!c.detail.empty()) s << " " << c.detail;
    return s.str();
}

}  // namespace hscs
