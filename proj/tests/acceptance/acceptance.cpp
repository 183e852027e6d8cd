// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hankel_scs/experiments.hpp"
#include "hankel_scs/metrics.hpp"
#include "hankel_scs/selftest.hpp"
#include "hankel_scs/shgd.hpp"

using namespace hscs;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail)
{
    std::printf("%s %d %s: %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

struct Fit {
    double slope = 0.0;
    double r2 = 0.0;
};

Fit linear_fit(const std::vector<double>& x, const std::vector<double>& y)
{
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    Fit f;
    f.slope = sxy / sxx;
    f.r2 = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
    return f;
}

void exact_recovery()
{
    const Index n = 127, r = 4, m = 76;
    const int trials = 50;
    int ok = 0;
    double worst_ms = 0.0;
    for (int t = 0; t < trials; ++t) {
        const Trial tr = make_trial(n, r, m, 0.0, 1.5, trial_seed(101, r, 0.6, t));
        SolverConfig cfg;
        cfg.r = r;
        cfg.seed = tr.seed;
        const auto t0 = std::chrono::steady_clock::now();
        const RecoveryResult res = recover(tr.observed, tr.mask, cfg);
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        worst_ms = std::max(worst_ms, ms);
        if (rel_error(res.x_hat, tr.signal) <= 1e-3) ++ok;
    }
    const double rate = static_cast<double>(ok) / trials;
    report(1, "exact recovery n=127 r=4 m=76", rate >= 0.9 && worst_ms < 2000.0,
           fmt("success %.0f/%.0f, slowest trial %.1f ms", ok, trials, worst_ms));
}

void phase_transition()
{
    ExperimentSpec s = default_spec(ExperimentKind::phase);
    s.seed = 202;
    s.record_timing = false;
    const GridResult shgd = run_phase(s);
    s.solver = SolverKind::pgd;
    const GridResult pgd = run_phase(s);

    // Binomial noise allowance at the 90% level: 3 standard deviations.
    const double slack = 3.0 * std::sqrt(0.9 * 0.1 / s.trials);
    int violations = 0;
    auto check = [&](const GridResult& g) {
        for (std::size_t i = 0; i < s.r_values.size(); ++i)
            for (std::size_t j = 0; j < s.p_values.size(); ++j) {
                const PhaseCell& c = g.at(s.r_values[i], s.p_values[j]);
                if (c.rate() < 0.9) continue;
                if (j + 1 < s.p_values.size() &&
                    g.at(s.r_values[i], s.p_values[j + 1]).rate() < 0.9 - slack)
                    ++violations;
                if (i > 0 && g.at(s.r_values[i - 1], s.p_values[j]).rate() < 0.9 - slack)
                    ++violations;
            }
    };
    check(shgd);
    check(pgd);
    int agree = 0;
    for (std::size_t k = 0; k < shgd.cells.size(); ++k)
        if ((shgd.cells[k].rate() >= 0.9) == (pgd.cells[k].rate() >= 0.9)) ++agree;
    const double frac = static_cast<double>(agree) / static_cast<double>(shgd.cells.size());
    report(2, "phase transition shape", violations == 0 && frac >= 0.9,
           fmt("monotonicity violations %.0f, boundary agreement %.3f over %.0f cells", violations,
               frac, static_cast<double>(shgd.cells.size())));
}

void linear_convergence()
{
    const Index n = 127, r = 4, m = 76;
    const int seeds = 10, window = 50;
    const double floor_err = 1e-10;
    int bad_windows = 0, short_runs = 0;
    double min_r2 = 1.0;
    for (int t = 0; t < seeds; ++t) {
        const Trial tr = make_trial(n, r, m, 0.0, 1.5, trial_seed(303, r, 0.6, t));
        std::vector<double> err;
        SolverConfig cfg;
        cfg.r = r;
        cfg.seed = tr.seed;
        cfg.step = FixedStep{0.75};
        cfg.max_iters = 5000;
        cfg.rel_change_tol = 0.0;
        cfg.monitor = [&](int, const ComplexSignal& x) {
            err.push_back(rel_error(x, tr.signal));
            return err.back() <= floor_err;
        };
        recover(tr.observed, tr.mask, cfg);
        if (err.empty() || err.back() > floor_err) {
            ++short_runs;
            continue;
        }
        for (std::size_t k = 0; k + window < err.size(); ++k)
            if (err[k + window] > 0.5 * err[k]) ++bad_windows;
        std::vector<double> it, le;
        for (std::size_t k = 0; k < err.size(); ++k) {
            it.push_back(static_cast<double>(k + 1));
            le.push_back(std::log(err[k]));
        }
        min_r2 = std::min(min_r2, linear_fit(it, le).r2);
    }
    report(3, "linear convergence with fixed step 0.75",
           bad_windows == 0 && short_runs == 0 && min_r2 >= 0.95,
           fmt("%.0f seeds, windows without halving %.0f, runs missing tolerance %.0f, min R^2 %.4f",
               seeds, bad_windows, short_runs, min_r2));
}

void timing_ratio()
{
    ExperimentSpec s = default_spec(ExperimentKind::timing);
    s.targets = {1e-5};
    s.trials = 10;
    s.repetitions = 1;
    s.seed = 404;
    const TimingResult t = run_timing(s);
    double ratio = -1.0, shgd_pass = 0.0, pgd_pass = 0.0;
    int conv_s = 0, conv_p = 0;
    for (const TimingRow& row : t.rows) {
        if (row.solver == "ratio" && row.ratio) ratio = *row.ratio;
        if (row.solver == "shgd") {
            shgd_pass = row.passes_per_iter;
            conv_s = row.converged;
        }
        if (row.solver == "pgd") {
            pgd_pass = row.passes_per_iter;
            conv_p = row.converged;
        }
    }
    const bool pass_ratio = 3.0 * shgd_pass == 2.0 * pgd_pass && shgd_pass > 0.0;
    report(4, "timing ratio n=2046 r=150 m=876",
           ratio >= 0.40 && ratio <= 0.80 && pass_ratio && conv_s == s.trials && conv_p == s.trials,
           fmt("mean wall-time ratio %.3f, passes per iteration %.0f vs %.0f, converged %.0f", ratio,
               shgd_pass, pgd_pass, std::min(conv_s, conv_p)));
}

void noise_robustness()
{
    ExperimentSpec s = default_spec(ExperimentKind::noise);
    s.seed = 505;
    const NoiseResult res = run_noise(s);
    std::map<Index, std::map<double, double>> curve;
    for (const NoiseRow& row : res.rows) curve[row.m][row.sigma_e] = row.mean_rmse;
    double min_slope = 1e9, max_slope = -1e9;
    bool below = true;
    for (const auto& [m, pts] : curve) {
        std::vector<double> lx, ly;
        for (const auto& [sig, e] : pts)
            if (sig > 0.0) {
                lx.push_back(std::log10(sig));
                ly.push_back(std::log10(e));
            }
        const double sl = linear_fit(lx, ly).slope;
        min_slope = std::min(min_slope, sl);
        max_slope = std::max(max_slope, sl);
    }
    const Index lo = s.m_values.front(), hi = s.m_values.back();
    for (const auto& [sig, e] : curve[hi])
        if (sig > 0.0 && !(e < curve[lo][sig])) below = false;
    report(5, "noise robustness n=127 r=12",
           min_slope >= 0.8 && max_slope <= 1.2 && below,
           fmt("log-log slopes in [%.3f, %.3f], m=%.0f below m=%.0f at every noise level: ", min_slope,
               max_slope, static_cast<double>(hi), static_cast<double>(lo)) +
               (below ? "yes" : "no"));
}

void suite(int id, const std::string& name, const std::vector<PropertyCheck>& checks)
{
    bool ok = true;
    std::string detail;
    for (const PropertyCheck& c : checks) {
        ok = ok && c.pass;
        if (!detail.empty()) detail += "; ";
        detail += c.name + fmt(" worst %.2e tol %.0e x%.0f", c.worst, c.tol, c.cases);
    }
    report(id, name, ok, detail);
}

}  // namespace

int main()
{
    using Step = std::pair<const char*, std::function<void()>>;
    const std::vector<Step> steps = {
        {"6", [] {
             suite(6, "operator properties",
                   {checks::adjoint(100, 61), checks::isometry(100, 62), checks::fft_vs_dense(100, 63),
                    checks::vandermonde_factorization(100, 64), checks::weights_identity(100, 65)});
         }},
        {"7", [] {
             suite(7, "factorization", {checks::takagi(20, 71), checks::gradients(20, 72),
                                        checks::loss_oracle(20, 73)});
         }},
        {"8", [] {
             suite(8, "theory checks",
                   {checks::lemma4(100, 81), checks::alignment_gap(20, 82),
                    checks::complex_orthogonal_feasibility(20, 100, 83)});
         }},
        {"1", exact_recovery},
        {"3", linear_convergence},
        {"5", noise_robustness},
        {"2", phase_transition},
        {"4", timing_ratio},
    };
    for (const auto& [id, fn] : steps) {
        try {
            fn();
        } catch (const std::exception& e) {
            report(std::stoi(id), "error", false, e.what());
        }
    }
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
