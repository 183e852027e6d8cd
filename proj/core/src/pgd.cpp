#include "hankel_scs/pgd.hpp"

#include <cmath>
#include <limits>

#include "hankel_scs/fft.hpp"
#include "solver_common.hpp"

namespace hscs {

namespace {

struct Iterate {
    FactorPair pair;
    ComplexSignal g;  // G^*(Z_U Z_V^H)
    CMatrix LL;       // Z_U^H Z_U
    CMatrix RR;       // Z_V^H Z_V
};

Iterate evaluate(FactorPair pair)
{
    Iterate it;
    it.g = gstar_cross(pair.Z_U, pair.Z_V);
    it.LL = detail::gram(pair.Z_U);
    it.RR = detail::gram(pair.Z_V);
    it.pair = std::move(pair);
    return it;
}

double loss_from(const Iterate& it, const ComplexSignal& y, const RVector& mult, double p,
                 double lambda)
{
    const double data = (mult.array() * (it.g - y).array().abs2()).sum() / (4.0 * p);
    const double full = (it.LL * it.RR).trace().real();
    const double penalty = std::max(0.0, full - it.g.squaredNorm()) / 4.0;
    return data + penalty + lambda * (it.LL - it.RR).squaredNorm();
}

FactorPair grad_from(const Iterate& it, const ComplexSignal& y, const RVector& mult, double p,
                     double lambda)
{
    const HankelDims dims = it.pair.dims();
    const ComplexSignal w = (mult.cast<cplx>().cwiseProduct(it.g - y)) / p - it.g;
    const ComplexSignal u = apply_D_inv(w, dims);
    const CMatrix B = it.LL - it.RR;
    const CMatrix& L = it.pair.Z_U;
    const CMatrix& R = it.pair.Z_V;
    FactorPair out;
    out.Z_U = hankel_times(u, dims, R);
    out.Z_U.noalias() += L * (it.RR + (8.0 * lambda) * B);
    out.Z_V = hankel_adjoint_times(u, dims, L);
    out.Z_V.noalias() += R * (it.LL - (8.0 * lambda) * B);
    return out;
}

CMatrix project_rows(const CMatrix& Z, double radius, bool enabled)
{
    return enabled ? project_C(Z, radius) : Z;
}

void check_pair(const FactorPair& pair, const ComplexSignal& y, const SamplingMask& mask,
                double p)
{
    require(pair.Z_U.cols() == pair.Z_V.cols() && pair.Z_U.cols() >= 1,
            "pgd: factor ranks differ");
    require(y.size() == pair.dims().length(), "pgd: signal length does not match the lift");
    require(y.size() == mask.n(), "pgd: mask length mismatch");
    require(p > 0.0, "pgd: p must be > 0");
}

}  // namespace

double pgd_loss(const FactorPair& pair, const ComplexSignal& y_obs, const SamplingMask& mask,
                double p, double balancing_weight)
{
    check_pair(pair, y_obs, mask, p);
    return loss_from(evaluate(pair), y_obs, mask.multiplicity(), p, balancing_weight);
}

FactorPair pgd_grad(const FactorPair& pair, const ComplexSignal& y_obs, const SamplingMask& mask,
                    double p, double balancing_weight)
{
    check_pair(pair, y_obs, mask, p);
    return grad_from(evaluate(pair), y_obs, mask.multiplicity(), p, balancing_weight);
}

RecoveryResult pgd_recover(const ComplexSignal& observed, const SamplingMask& mask,
                           const SolverConfig& cfg)
{
    cfg.validate();
    const auto t_start = detail::Clock::now();
    const detail::PaddedProblem prob = detail::pad_problem(observed, mask, /*make_odd=*/false);
    const Index n = prob.observed.size();
    const HankelDims dims = HankelDims::balanced(n);
    require(cfg.r <= std::min(dims.rows, dims.cols), "pgd_recover: r exceeds the lift dimension");
    const ComplexSignal y = apply_D(prob.observed, dims);
    const double lambda = cfg.balancing_weight;

    const detail::SplitSchedule schedule = detail::make_schedule(cfg, prob.mask);
    const SamplingMask& m0 = schedule.init_mask();
    const ComplexSignal u0 = p_omega(prob.observed, m0) / m0.ratio();
    const SvdResult svd = trunc_svd(LinearOperator::hankel(u0, dims), cfg.r, cfg.seed, cfg.init_svd);
    if (!(svd.sigma[0] > 0.0) || svd.sigma[cfg.r - 1] <= 1e-12 * svd.sigma[0]) {
        throw NumericalError(
            "pgd_recover: rank exceeds the numerical rank of the lifted observation; try a smaller r");
    }

    RecoveryResult res;
    res.sigma1_M0 = svd.sigma[0];
    const double sigma = svd.sigma[0] / (1.0 - cfg.eps0);
    res.mu = cfg.mu ? *cfg.mu
                    : std::max(detail::estimate_mu(svd.U, n), detail::estimate_mu(svd.V, n));
    res.radius = projection_radius(res.mu, cfg.r, sigma, n);

    const RVector root = svd.sigma.cwiseSqrt();
    FactorPair p0{svd.U * root.asDiagonal(), svd.V * root.asDiagonal()};
    auto project = [&](FactorPair pr) {
        pr.Z_U = project_rows(pr.Z_U, res.radius, cfg.projection);
        pr.Z_V = project_rows(pr.Z_V, res.radius, cfg.projection);
        return pr;
    };

    const bool fixed = std::holds_alternative<FixedStep>(cfg.step);
    const double eta_base = fixed ? fixed_step(res.sigma1_M0, std::get<FixedStep>(cfg.step).eta_prime)
                                  : std::get<Backtracking>(cfg.step).eta0_scale / res.sigma1_M0;

    Iterate cur = evaluate(project(std::move(p0)));
    const RVector mult_full = prob.mask.multiplicity();
    const double loss0 = loss_from(cur, y, mult_full, prob.mask.ratio(), lambda);
    auto unweighted = [&](const ComplexSignal& g) {
        return ComplexSignal(apply_D_inv(g, dims).head(prob.original_n));
    };
    ComplexSignal x_prev = unweighted(cur.g);
    res.init_ms = detail::ms_since(t_start);

    const fft::Counters c0 = fft::counters();
    double eta = eta_base;
    res.termination = Termination::max_iters;

    for (int k = 1; k <= cfg.max_iters; ++k) {
        const auto t_iter = detail::Clock::now();
        const SamplingMask& mk = schedule.iteration_mask(k);
        const RVector mult = schedule.parts.empty() ? mult_full : mk.multiplicity();
        const double p = mk.ratio();
        const FactorPair G = grad_from(cur, y, mult, p, lambda);

        auto step_to = [&](double e) {
            FactorPair trial{cur.pair.Z_U - e * G.Z_U, cur.pair.Z_V - e * G.Z_V};
            return evaluate(project(std::move(trial)));
        };

        Iterate next;
        double loss_next = 0.0;
        if (fixed) {
            next = step_to(eta);
            loss_next = loss_from(next, y, mult, p, lambda);
        } else {
            const auto& bt = std::get<Backtracking>(cfg.step);
            const double loss_cur = loss_from(cur, y, mult, p, lambda);
            const double g2 = G.Z_U.squaredNorm() + G.Z_V.squaredNorm();
            eta = std::min(eta_base, eta / bt.beta);
            bool accepted = false;
            for (int h = 0; h <= bt.max_halvings; ++h) {
                next = step_to(eta);
                loss_next = loss_from(next, y, mult, p, lambda);
                if (std::isfinite(loss_next) && loss_next <= loss_cur - bt.c_armijo * eta * g2 / 2.0) {
                    accepted = true;
                    break;
                }
                eta *= bt.beta;
            }
            if (!accepted) {
                res.termination = Termination::stalled;
                break;
            }
        }

        if (!detail::all_finite(next.pair.Z_U) || !detail::all_finite(next.pair.Z_V) ||
            !next.g.allFinite() || !std::isfinite(loss_next)) {
            res.termination = Termination::diverged;
            break;
        }
        cur = std::move(next);
        const ComplexSignal x_new = unweighted(cur.g);
        const double denom = x_prev.norm();
        const double rel_change =
            denom > 0.0 ? (x_new - x_prev).norm() / denom : std::numeric_limits<double>::infinity();
        x_prev = x_new;

        res.iters = k;
        res.history.push_back(
            {k, loss_next, rel_change, eta, detail::ms_since(t_iter), (cur.LL - cur.RR).norm()});

        if (loss_next > cfg.divergence_factor * std::max(loss0, 1e-300)) {
            res.termination = Termination::diverged;
            break;
        }
        if (cfg.monitor && cfg.monitor(k, x_new)) {
            res.termination = Termination::monitor_stop;
            break;
        }
        if (rel_change <= cfg.rel_change_tol) {
            res.termination = Termination::tol_reached;
            break;
        }
    }

    const fft::Counters& c1 = fft::counters();
    res.column_passes = c1.column_passes - c0.column_passes;
    res.transforms = c1.transforms - c0.transforms;
    res.x_hat = unweighted(cur.g);
    res.Z_final = cur.pair.Z_U;
    res.right_factor = cur.pair.Z_V;
    res.total_ms = detail::ms_since(t_start);
    return res;
}

}  // namespace hscs
