#include "hankel_scs/lowrank.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

namespace hscs {

namespace {

CMatrix gaussian_block(Index rows, Index cols, std::uint64_t seed)
{
    Rng rng(seed);
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    CMatrix X(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) {
            const double re = g(rng);
            const double im = g(rng);
            X(i, j) = {re, im};
        }
    return X;
}

CMatrix orthonormalize(const CMatrix& Y)
{
    Eigen::HouseholderQR<CMatrix> qr(Y);
    return qr.householderQ() * CMatrix::Identity(Y.rows(), Y.cols());
}

// Principal-type square root of a unitary matrix with the branch cut placed in
// the widest gap of its eigenvalue phases, so that the root is a continuous
// function of the matrix on its spectrum (hence symmetric when X is).
CMatrix unitary_sqrt(const CMatrix& X)
{
    Eigen::ComplexSchur<CMatrix> schur(X);
    const CMatrix& T = schur.matrixT();
    const CMatrix& Y = schur.matrixU();
    const Index r = X.rows();

    std::vector<double> phases(static_cast<std::size_t>(r));
    for (Index i = 0; i < r; ++i) phases[static_cast<std::size_t>(i)] = std::arg(T(i, i));
    std::vector<double> sorted = phases;
    std::sort(sorted.begin(), sorted.end());
    double cut = std::numbers::pi;
    double widest = -1.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double a = sorted[i];
        const double b = (i + 1 < sorted.size()) ? sorted[i + 1] : sorted[0] + 2.0 * std::numbers::pi;
        if (b - a > widest) {
            widest = b - a;
            cut = 0.5 * (a + b);
        }
    }

    CVector roots(r);
    for (Index i = 0; i < r; ++i) {
        double theta = phases[static_cast<std::size_t>(i)];
        // Map theta into (cut - 2 pi, cut].
        while (theta > cut) theta -= 2.0 * std::numbers::pi;
        while (theta <= cut - 2.0 * std::numbers::pi) theta += 2.0 * std::numbers::pi;
        roots[i] = std::sqrt(std::abs(T(i, i))) * std::exp(cplx(0.0, 0.5 * theta));
    }
    return Y * roots.asDiagonal() * Y.adjoint();
}

}  // namespace

LinearOperator LinearOperator::dense(CMatrix M)
{
    LinearOperator op;
    op.rows = M.rows();
    op.cols = M.cols();
    auto shared = std::make_shared<const CMatrix>(std::move(M));
    op.apply = [shared](const CMatrix& X) -> CMatrix { return *shared * X; };
    op.apply_adjoint = [shared](const CMatrix& Y) -> CMatrix { return shared->adjoint() * Y; };
    return op;
}

LinearOperator LinearOperator::hankel(ComplexSignal u, const HankelDims& dims, double scale)
{
    require(u.size() == dims.length(), "LinearOperator::hankel: length mismatch");
    LinearOperator op;
    op.rows = dims.rows;
    op.cols = dims.cols;
    auto shared = std::make_shared<const ComplexSignal>(std::move(u) * scale);
    op.apply = [shared, dims](const CMatrix& X) -> CMatrix {
        return hankel_times(*shared, dims, X);
    };
    op.apply_adjoint = [shared, dims](const CMatrix& Y) -> CMatrix {
        return hankel_adjoint_times(*shared, dims, Y);
    };
    return op;
}

SvdResult trunc_svd(const LinearOperator& op, Index r, std::uint64_t seed, const SvdOptions& opts)
{
    require(r >= 1, "trunc_svd: r must be >= 1");
    require(r <= std::min(op.rows, op.cols), "trunc_svd: r exceeds matrix dimensions");
    require(opts.oversample >= 0 && opts.max_iters >= 1, "trunc_svd: invalid options");

    const Index k = std::min(r + opts.oversample, std::min(op.rows, op.cols));
    CMatrix Q = orthonormalize(op.apply(gaussian_block(op.cols, k, seed)));

    SvdResult res;
    CMatrix Ub;  // Ritz coefficients of the left vectors in the basis Q.
    CMatrix V;
    RVector S;
    double residual = std::numeric_limits<double>::infinity();

    for (int it = 1; it <= opts.max_iters + 1; ++it) {
        const CMatrix W = op.apply_adjoint(Q);  // M^H Q
        if (it > 1) {
            // Residual of the previous Ritz triplets: ||M^H u_i - s_i v_i||.
            if (S[0] == 0.0) {
                residual = 0.0;
            } else {
                const CMatrix Rm = W * Ub.leftCols(r) - V.leftCols(r) * S.head(r).asDiagonal();
                residual = Rm.colwise().norm().maxCoeff() / S[0];
            }
            res.iterations = it - 1;
            if ((it - 1 >= opts.power_iters && residual <= opts.tol) || it == opts.max_iters + 1)
                break;
        }
        const CMatrix Qv = orthonormalize(W);
        const CMatrix Y = op.apply(Qv);  // M Qv
        Eigen::HouseholderQR<CMatrix> qr(Y);
        Q = qr.householderQ() * CMatrix::Identity(Y.rows(), k);
        const CMatrix B = Q.adjoint() * Y;  // k x k
        Eigen::BDCSVD<CMatrix> svd(B, Eigen::ComputeFullU | Eigen::ComputeFullV);
        Ub = svd.matrixU();
        S = svd.singularValues();
        V = Qv * svd.matrixV();
    }

    res.U = Q * Ub.leftCols(r);
    res.V = V.leftCols(r);
    res.sigma = S.head(r);
    res.residual = residual;
    res.converged = residual <= opts.tol;
    if (!res.converged && opts.require_convergence) {
        std::ostringstream msg;
        msg << "trunc_svd: no convergence after " << res.iterations
            << " subspace iterations (relative residual " << residual << ", tol " << opts.tol
            << ")";
        throw SvdNotConverged(msg.str(), residual);
    }
    return res;
}

Factor TakagiFactor::factor() const
{
    return U * sigma.cwiseMax(0.0).cwiseSqrt().cast<cplx>().asDiagonal();
}

CMatrix TakagiFactor::reconstruct() const
{
    return U * sigma.cast<cplx>().asDiagonal() * U.transpose();
}

TakagiFactor takagi_dense(const CMatrix& S)
{
    require(S.rows() == S.cols(), "takagi_dense: matrix must be square");
    const CMatrix Ssym = 0.5 * (S + S.transpose());
    Eigen::JacobiSVD<CMatrix> svd(Ssym, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const CMatrix& P = svd.matrixU();
    const CMatrix& Qm = svd.matrixV();
    // S = P L Q^H = conj(Q) L P^T, so X = P^H conj(Q) is unitary, symmetric on
    // each cluster of equal nonzero singular values, and S = P X^{1/2} L X^{1/2} P^T.
    const CMatrix X = P.adjoint() * Qm.conjugate();
    TakagiFactor out;
    out.U = P * unitary_sqrt(X);
    out.sigma = svd.singularValues();
    return out;
}

TakagiFactor takagi_truncated(const LinearOperator& op, Index r, std::uint64_t seed,
                              const SvdOptions& opts)
{
    require(op.rows == op.cols, "takagi_truncated: operator must be square");

    // Symmetry probe: M v vs M^T v = conj(M^H conj(v)).
    {
        const CMatrix probe = gaussian_block(op.cols, 2, mix_seed(seed, 0x7a6a));
        const CMatrix Mv = op.apply(probe);
        const CMatrix MTv = op.apply_adjoint(probe.conjugate()).conjugate();
        const double scale = std::max(Mv.norm(), MTv.norm());
        if ((Mv - MTv).norm() > 1e-8 * scale) {
            std::ostringstream msg;
            msg << "takagi_truncated: operator is not complex symmetric (probe mismatch "
                << (Mv - MTv).norm() / scale << ")";
            throw InvalidArgument(msg.str());
        }
    }

    const SvdResult svd = trunc_svd(op, r, seed, opts);
    // Core S = U^H M conj(U); M conj(U) = conj(M^H U) for symmetric M.
    const CMatrix MUbar = op.apply_adjoint(svd.U).conjugate();
    const CMatrix core = svd.U.adjoint() * MUbar;
    const TakagiFactor small = takagi_dense(core);
    TakagiFactor out;
    out.U = svd.U * small.U;
    out.sigma = small.sigma;
    return out;
}

SvdOptions spectral_init_svd_options()
{
    SvdOptions o;
    o.tol = 1e-6;
    o.max_iters = 15;
    o.require_convergence = false;
    return o;
}

SpectralInit spectral_init(const ComplexSignal& observed, const SamplingMask& mask, Index r,
                           std::uint64_t seed, const SvdOptions& opts)
{
    require(observed.size() == mask.n(), "spectral_init: mask length mismatch");
    const HankelDims dims = HankelDims::square(observed.size());
    require(r >= 1 && r <= dims.rows, "spectral_init: r must be in [1, n_s]");

    const double p = mask.ratio();
    const ComplexSignal u = apply_D_inv(p_omega(observed, mask), dims) / p;
    const TakagiFactor tk = takagi_truncated(LinearOperator::hankel(u, dims), r, seed, opts);

    if (!(tk.sigma[0] > 0.0) || tk.sigma[r - 1] <= 1e-12 * tk.sigma[0]) {
        std::ostringstream msg;
        msg << "spectral_init: rank " << r
            << " exceeds the numerical rank of the lifted observation; try a smaller r";
        throw NumericalError(msg.str());
    }
    SpectralInit init;
    init.takagi = tk;
    init.Z0 = tk.factor();
    init.sigma1 = tk.sigma[0];
    return init;
}

}  // namespace hscs
