#include "hankel_scs/metrics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <random>

namespace hscs {

namespace {

constexpr double kSingularGuard = 1e-10;

struct Residuals {
    CMatrix E1;
    CMatrix E2;
    CMatrix T;  // P^{-T}
};

Residuals residuals(const CMatrix& Z, const CMatrix& A, const CMatrix& P)
{
    Residuals res;
    res.T = P.inverse().transpose();
    res.E1 = Z - A * P;
    res.E2 = Z - A * res.T;
    return res;
}

double objective(const Residuals& e) { return e.E1.squaredNorm() + e.E2.squaredNorm(); }

// dF = Re <grad, dP>.
CMatrix gradient(const CMatrix& A, const Residuals& e)
{
    const CMatrix Tc = e.T.conjugate();
    return -2.0 * A.adjoint() * e.E1 + 2.0 * Tc * e.E2.transpose() * A.conjugate() * Tc;
}

double gap(const CMatrix& A, const CMatrix& P, const Residuals& e)
{
    return ((A * P).adjoint() * e.E1 - e.E2.transpose() * (A * e.T).conjugate()).norm();
}

RVector pack(const CMatrix& P)
{
    const Index k = P.size();
    RVector v(2 * k);
    for (Index i = 0; i < k; ++i) {
        v[i] = P.data()[i].real();
        v[k + i] = P.data()[i].imag();
    }
    return v;
}

CMatrix unpack(const RVector& v, Index r)
{
    const Index k = r * r;
    CMatrix P(r, r);
    for (Index i = 0; i < k; ++i) P.data()[i] = cplx(v[i], v[k + i]);
    return P;
}

double sigma_min(const CMatrix& P)
{
    Eigen::JacobiSVD<CMatrix> svd(P);
    return svd.singularValues()(P.cols() - 1);
}

}  // namespace

double rel_error(const ComplexSignal& x_hat, const ComplexSignal& x)
{
    require(x_hat.size() == x.size(), "rel_error: length mismatch");
    const double nx = x.norm();
    require(nx > 0.0, "rel_error: reference signal is zero");
    return (x_hat - x).norm() / nx;
}

Procrustes procrustes_real_orth(const CMatrix& Z, const CMatrix& Z_star)
{
    require(Z.rows() == Z_star.rows() && Z.cols() == Z_star.cols(),
            "procrustes_real_orth: shape mismatch");
    const RMatrix K = (Z_star.adjoint() * Z).real();
    Eigen::JacobiSVD<RMatrix> svd(K, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Procrustes out;
    out.Q = svd.matrixU() * svd.matrixV().transpose();
    out.dist = (Z - Z_star * out.Q.cast<cplx>()).norm();
    return out;
}

double dist_P_objective(const CMatrix& Z, const CMatrix& Z_star, const CMatrix& P)
{
    require(P.rows() == Z_star.cols() && P.cols() == Z_star.cols(), "dist_P_objective: bad P");
    return objective(residuals(Z, Z_star, P));
}

Alignment dist_P_upper(const CMatrix& Z, const CMatrix& Z_star)
{
    require(Z.rows() == Z_star.rows() && Z.cols() == Z_star.cols(), "dist_P_upper: shape mismatch");
    const Index r = Z_star.cols();
    require(r >= 1, "dist_P_upper: empty factor");
    Eigen::JacobiSVD<CMatrix> zs(Z_star);
    const RVector s = zs.singularValues();
    require(s(r - 1) > 1e-12 * std::max(s(0), 1e-300), "dist_P_upper: Z_star is rank deficient");
    const double scale2 = s(0) * s(0);
    const double tol = 1e-8 * scale2;

    Alignment out;
    out.P = procrustes_real_orth(Z, Z_star).Q.cast<cplx>();
    Residuals e = residuals(Z, Z_star, out.P);
    double F = objective(e);
    out.first_order_gap = gap(Z_star, out.P, e);

    const Index dim = 2 * r * r;
    double lambda = 1e-3 * scale2;
    const int max_iters = 200;
    auto grad_vec = [&](const CMatrix& P) {
        const Residuals ep = residuals(Z, Z_star, P);
        return pack(gradient(Z_star, ep)).eval();
    };

    int it = 0;
    for (; it < max_iters && out.first_order_gap > tol; ++it) {
        const RVector theta = pack(out.P);
        const RVector g = pack(gradient(Z_star, e));
        const double h = 1e-6 * std::max(1.0, theta.cwiseAbs().maxCoeff());
        RMatrix H(dim, dim);
        for (Index j = 0; j < dim; ++j) {
            RVector tp = theta, tm = theta;
            tp[j] += h;
            tm[j] -= h;
            H.col(j) = (grad_vec(unpack(tp, r)) - grad_vec(unpack(tm, r))) / (2.0 * h);
        }
        H = 0.5 * (H + H.transpose()).eval();

        bool improved = false;
        for (int attempt = 0; attempt < 40; ++attempt) {
            const RMatrix A = H + lambda * RMatrix::Identity(dim, dim);
            const RVector step = A.ldlt().solve(-g);
            const CMatrix Pn = unpack(theta + step, r);
            if (!Pn.allFinite() || sigma_min(Pn) < kSingularGuard) {
                lambda *= 10.0;
                continue;
            }
            const Residuals en = residuals(Z, Z_star, Pn);
            const double Fn = objective(en);
            const bool flat = Fn <= F * (1.0 + 1e-12) && gap(Z_star, Pn, en) < out.first_order_gap;
            if (std::isfinite(Fn) && (Fn <= F || flat)) {
                out.P = Pn;
                e = en;
                F = Fn;
                lambda = std::max(lambda / 10.0, 1e-15 * scale2);
                improved = true;
                break;
            }
            lambda *= 10.0;
        }
        out.first_order_gap = gap(Z_star, out.P, e);
        if (!improved) break;
    }
    out.iterations = it;
    out.residual = std::sqrt(F);
    out.singular = sigma_min(out.P) < kSingularGuard;
    out.converged = !out.singular && out.first_order_gap <= tol;
    return out;
}

CMatrix complex_orthogonal(const RMatrix& R, const RMatrix& W)
{
    require(R.rows() == R.cols() && W.rows() == W.cols() && R.rows() == W.rows(),
            "complex_orthogonal: shape mismatch");
    require((W + W.transpose()).norm() <= 1e-12 * std::max(1.0, W.norm()),
            "complex_orthogonal: W must be skew-symmetric");
    const CMatrix iW = cplx(0.0, 1.0) * W.cast<cplx>();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(iW);
    const RVector ev = es.eigenvalues().array().exp();
    const CMatrix E = es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    return R.cast<cplx>() * E;
}

CMatrix random_complex_orthogonal(Index r, double scale, Rng& rng)
{
    require(r >= 1, "random_complex_orthogonal: r must be >= 1");
    require(scale >= 0.0, "random_complex_orthogonal: scale must be >= 0");
    std::normal_distribution<double> N(0.0, 1.0);
    RMatrix G(r, r);
    for (Index j = 0; j < r; ++j)
        for (Index i = 0; i < r; ++i) G(i, j) = N(rng);
    Eigen::HouseholderQR<RMatrix> qr(G);
    RMatrix R = qr.householderQ() * RMatrix::Identity(r, r);
    const RMatrix Rt = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < r; ++j)
        if (Rt(j, j) < 0.0) R.col(j) *= -1.0;

    RMatrix W = RMatrix::Zero(r, r);
    if (r >= 2 && scale > 0.0) {
        for (Index j = 0; j < r; ++j)
            for (Index i = 0; i < j; ++i) {
                W(i, j) = N(rng);
                W(j, i) = -W(i, j);
            }
        Eigen::JacobiSVD<RMatrix> svd(W);
        const double nrm = svd.singularValues()(0);
        if (nrm > 0.0) W *= scale / nrm;
    }
    return complex_orthogonal(R, W);
}

double incoherence(const CMatrix& U, Index n)
{
    const Index r = U.cols();
    require(r >= 1 && n >= 1, "incoherence: empty input");
    require((U.adjoint() * U - CMatrix::Identity(r, r)).norm() <= 1e-8,
            "incoherence: columns are not orthonormal");
    const double row_max = U.rowwise().squaredNorm().maxCoeff();
    return static_cast<double>(n) * row_max / (2.0 * static_cast<double>(r));
}

Lemma4Report lemma4_check(const CMatrix& Z, const CMatrix& Z_star, const CMatrix& M,
                          const CMatrix& M_star)
{
    require(M.rows() == M_star.rows() && M.cols() == M_star.cols(), "lemma4_check: shape mismatch");
    const Index r = Z_star.cols();
    Lemma4Report rep;
    const Alignment al = dist_P_upper(Z, Z_star);
    rep.left = al.residual * al.residual;
    const double pd = procrustes_real_orth(Z, Z_star).dist;
    rep.middle = 2.0 * pd * pd;
    Eigen::JacobiSVD<CMatrix> svd(M_star);
    const double sr = svd.singularValues()(r - 1);
    require(sr > 0.0, "lemma4_check: M_star has rank below r");
    rep.right = (std::numbers::sqrt2 + 1.0) / sr * (M - M_star).squaredNorm();
    const double slack = 1e-9;
    rep.pass = rep.left <= rep.middle + slack && rep.middle <= rep.right + slack;
    return rep;
}

}  // namespace hscs
