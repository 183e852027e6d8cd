#include "hankel_scs/shgd.hpp"

#include <cmath>
#include <limits>

#include "hankel_scs/fft.hpp"
#include "hankel_scs/hankel_ops.hpp"
#include "solver_common.hpp"

namespace hscs {

namespace {

// Loss pieces shared by the evaluation paths. `g` = G^*(Z Z^T), `C` = Z^T conj(Z).
double loss_from(const ComplexSignal& g, const CMatrix& C, const ComplexSignal& y,
                 const RVector& mult, double p)
{
    const double data = (mult.array() * (g - y).array().abs2()).sum() / (4.0 * p);
    // ||Z Z^T||_F^2 = sum_ij C_ij^2 (real for Hermitian C); G G^* is an orthogonal
    // projector, so the Hankel residual is ||Z Z^T||_F^2 - ||G^*(Z Z^T)||^2.
    const double full = C.cwiseProduct(C).sum().real();
    const double penalty = std::max(0.0, full - g.squaredNorm()) / 4.0;
    return data + penalty;
}

struct Iterate {
    Factor Z;
    ComplexSignal g;
    CMatrix C;
};

Iterate evaluate(Factor Z)
{
    Iterate it;
    it.g = gstar_gram(Z);
    it.C = detail::gram(Z).conjugate();
    it.Z = std::move(Z);
    return it;
}

Factor grad_from(const Iterate& it, const ComplexSignal& y, const RVector& mult, double p)
{
    const ComplexSignal w = (mult.cast<cplx>().cwiseProduct(it.g - y)) / p - it.g;
    Factor G = g_apply_times_conj(w, it.Z);
    G.noalias() += it.Z * it.C;
    return G;
}

ComplexSignal unweighted(const ComplexSignal& g, Index original_n)
{
    return apply_D_inv(g).head(original_n);
}

}  // namespace

void SolverConfig::validate() const
{
    require(r >= 1, "solver: r must be >= 1");
    require(max_iters >= 0, "solver: max_iters must be >= 0");
    require(rel_change_tol >= 0.0, "solver: rel_change_tol must be >= 0");
    require(eps0 >= 0.0 && eps0 < 1.0, "solver: eps0 must be in [0, 1)");
    if (mu) require(*mu > 0.0, "solver: mu must be > 0");
    if (sample_splitting) require(splits >= 1, "solver: sample splitting needs K >= 1");
    if (const auto* f = std::get_if<FixedStep>(&step)) {
        require(f->eta_prime > 0.0, "solver: eta_prime must be > 0");
    } else {
        const auto& b = std::get<Backtracking>(step);
        require(b.beta > 0.0 && b.beta < 1.0, "solver: beta must be in (0, 1)");
        require(b.c_armijo > 0.0 && b.c_armijo < 1.0, "solver: c_armijo must be in (0, 1)");
        require(b.eta0_scale > 0.0, "solver: eta0_scale must be > 0");
        require(b.max_halvings >= 0, "solver: max_halvings must be >= 0");
    }
    require(balancing_weight >= 0.0, "solver: balancing weight must be >= 0");
}

std::string to_string(Termination t)
{
    switch (t) {
        case Termination::tol_reached: return "tol_reached";
        case Termination::max_iters: return "max_iters";
        case Termination::diverged: return "diverged";
        case Termination::stalled: return "stalled";
        case Termination::monitor_stop: return "monitor_stop";
    }
    return "unknown";
}

double loss(const Factor& Z, const ComplexSignal& y_obs, const SamplingMask& mask, double p)
{
    require(y_obs.size() == 2 * Z.rows() - 1, "loss: need y.size() == 2 n_s - 1");
    require(y_obs.size() == mask.n(), "loss: mask length mismatch");
    require(p > 0.0, "loss: p must be > 0");
    const Iterate it = evaluate(Z);
    return loss_from(it.g, it.C, y_obs, mask.multiplicity(), p);
}

Factor grad(const Factor& Z, const ComplexSignal& y_obs, const SamplingMask& mask, double p)
{
    require(y_obs.size() == 2 * Z.rows() - 1, "grad: need y.size() == 2 n_s - 1");
    require(y_obs.size() == mask.n(), "grad: mask length mismatch");
    require(p > 0.0, "grad: p must be > 0");
    return grad_from(evaluate(Z), y_obs, mask.multiplicity(), p);
}

Factor project_C(const Factor& Z, double radius)
{
    require(radius > 0.0, "project_C: radius must be > 0");
    Factor out = Z;
    for (Index i = 0; i < out.rows(); ++i) {
        const double nrm = out.row(i).norm();
        if (nrm > radius) out.row(i) *= radius / nrm;
    }
    return out;
}

double projection_radius(double mu, Index r, double sigma, Index n)
{
    return 2.0 * std::sqrt(mu * static_cast<double>(r) * sigma / static_cast<double>(n));
}

double fixed_step(double sigma1_M0, double eta_prime)
{
    require(sigma1_M0 > 0.0, "fixed_step: sigma_1(M0) must be > 0");
    return eta_prime / sigma1_M0;
}

RecoveryResult recover(const ComplexSignal& observed, const SamplingMask& mask,
                       const SolverConfig& cfg)
{
    cfg.validate();
    const auto t_start = detail::Clock::now();
    const detail::PaddedProblem prob = detail::pad_problem(observed, mask, /*make_odd=*/true);
    const Index n = prob.observed.size();
    const HankelDims dims = HankelDims::square(n);
    require(cfg.r <= dims.rows, "recover: r exceeds the lift dimension");
    const ComplexSignal y = apply_D(prob.observed, dims);

    const detail::SplitSchedule schedule = detail::make_schedule(cfg, prob.mask);
    const SpectralInit init = spectral_init(y, schedule.init_mask(), cfg.r, cfg.seed, cfg.init_svd);

    RecoveryResult res;
    res.sigma1_M0 = init.sigma1;
    const double sigma = init.sigma1 / (1.0 - cfg.eps0);
    res.mu = cfg.mu ? *cfg.mu : detail::estimate_mu(init.takagi.U, n);
    res.radius = projection_radius(res.mu, cfg.r, sigma, n);

    auto project = [&](const Factor& Z) { return cfg.projection ? project_C(Z, res.radius) : Z; };

    const bool fixed = std::holds_alternative<FixedStep>(cfg.step);
    const double eta_base = fixed ? fixed_step(init.sigma1, std::get<FixedStep>(cfg.step).eta_prime)
                                  : std::get<Backtracking>(cfg.step).eta0_scale / init.sigma1;

    Iterate cur = evaluate(project(init.Z0));
    const RVector mult_full = prob.mask.multiplicity();
    const double loss0 = loss_from(cur.g, cur.C, y, mult_full, prob.mask.ratio());
    ComplexSignal x_prev = unweighted(cur.g, prob.original_n);
    res.init_ms = detail::ms_since(t_start);

    const fft::Counters c0 = fft::counters();
    double eta = eta_base;
    res.termination = Termination::max_iters;

    for (int k = 1; k <= cfg.max_iters; ++k) {
        const auto t_iter = detail::Clock::now();
        const SamplingMask& mk = schedule.iteration_mask(k);
        const RVector mult = schedule.parts.empty() ? mult_full : mk.multiplicity();
        const double p = mk.ratio();
        const Factor G = grad_from(cur, y, mult, p);

        Iterate next;
        double loss_next = 0.0;
        if (fixed) {
            next = evaluate(project(cur.Z - eta * G));
            loss_next = loss_from(next.g, next.C, y, mult, p);
        } else {
            const auto& bt = std::get<Backtracking>(cfg.step);
            const double loss_cur = loss_from(cur.g, cur.C, y, mult, p);
            const double g2 = G.squaredNorm();
            eta = std::min(eta_base, eta / bt.beta);
            bool accepted = false;
            for (int h = 0; h <= bt.max_halvings; ++h) {
                next = evaluate(project(cur.Z - eta * G));
                loss_next = loss_from(next.g, next.C, y, mult, p);
                if (std::isfinite(loss_next) && loss_next <= loss_cur - bt.c_armijo * eta * g2) {
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

        if (!detail::all_finite(next.Z) || !next.g.allFinite() || !std::isfinite(loss_next)) {
            res.termination = Termination::diverged;
            break;
        }
        cur = std::move(next);
        const ComplexSignal x_new = unweighted(cur.g, prob.original_n);
        const double denom = x_prev.norm();
        const double rel_change =
            denom > 0.0 ? (x_new - x_prev).norm() / denom : std::numeric_limits<double>::infinity();
        x_prev = x_new;

        res.iters = k;
        res.history.push_back({k, loss_next, rel_change, eta, detail::ms_since(t_iter), 0.0});

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
    res.x_hat = unweighted(cur.g, prob.original_n);
    res.Z_final = cur.Z;
    res.total_ms = detail::ms_since(t_start);
    return res;
}

}  // namespace hscs
