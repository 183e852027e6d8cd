#include "hankel_scs/freq_est.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "hankel_scs/hankel_ops.hpp"
#include "hankel_scs/lowrank.hpp"

namespace hscs {

SpectralModel ModeEstimate::to_model(Index n) const
{
    SpectralModel m;
    m.n = n;
    m.freqs = freqs;
    m.dampings.clear();
    for (double d : dampings) m.dampings.push_back(std::max(d, 0.0));
    m.amps = amps;
    return m;
}

ModeEstimate esprit(const ComplexSignal& x, Index r)
{
    const Index n = x.size();
    require(r >= 1, "esprit: r must be >= 1");
    require(n >= 2 * r + 1, "esprit: need n >= 2r + 1");
    require(x.allFinite(), "esprit: signal contains NaN or Inf");

    const HankelDims dims = HankelDims::balanced(n);
    SvdOptions opts;
    opts.tol = 1e-12;
    opts.max_iters = 500;
    opts.require_convergence = false;
    const SvdResult svd = trunc_svd(LinearOperator::hankel(x, dims), r, /*seed=*/0x5eed, opts);
    if (!(svd.sigma[0] > 0.0) || svd.sigma[r - 1] <= 1e-10 * svd.sigma[0]) {
        std::ostringstream msg;
        msg << "esprit: signal subspace has rank below " << r << "; try a smaller r";
        throw NumericalError(msg.str());
    }

    const Index rows = dims.rows;
    const CMatrix top = svd.U.topRows(rows - 1);
    const CMatrix bottom = svd.U.bottomRows(rows - 1);
    const CMatrix Phi = top.colPivHouseholderQr().solve(bottom);
    Eigen::ComplexEigenSolver<CMatrix> es(Phi, /*computeEigenvectors=*/false);
    const CVector z = es.eigenvalues();

    std::vector<double> f(static_cast<std::size_t>(r)), tau(static_cast<std::size_t>(r));
    for (Index k = 0; k < r; ++k) {
        double fk = std::arg(z[k]) / (2.0 * std::numbers::pi);
        if (fk < 0.0) fk += 1.0;
        if (fk >= 1.0) fk -= 1.0;
        f[static_cast<std::size_t>(k)] = fk;
        tau[static_cast<std::size_t>(k)] = -std::log(std::abs(z[k]));
    }
    std::vector<std::size_t> order(static_cast<std::size_t>(r));
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });

    ModeEstimate est;
    for (std::size_t k : order) {
        est.freqs.push_back(f[k]);
        est.dampings.push_back(tau[k]);
    }
    est.amps.assign(static_cast<std::size_t>(r), cplx(1.0, 0.0));
    const CMatrix V = vandermonde(est.to_model(n), n);
    const CVector a = V.colPivHouseholderQr().solve(x);
    for (Index k = 0; k < r; ++k) est.amps[static_cast<std::size_t>(k)] = a[k];
    return est;
}

}  // namespace hscs
