#include "hankel_scs/experiments.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "hankel_scs/metrics.hpp"
#include "hankel_scs/pgd.hpp"
#include "json.hpp"

#ifndef HSCS_GIT_HASH
#define HSCS_GIT_HASH "unknown"
#endif

namespace hscs {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string num(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string header_line(const char* kind, const Metadata& meta)
{
    return std::string("# hankel_scs ") + kind + " created " + meta.created + " git " +
           meta.git_hash + "\n";
}

double median(std::vector<double> v)
{
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

Index cell_m(Index n, double p)
{
    return std::clamp<Index>(static_cast<Index>(std::llround(p * static_cast<double>(n))), 1, n);
}

// Time and iteration count at which each target accuracy was first met.
struct TargetTrace {
    std::vector<double> ms;
    std::vector<int> iters;
    double ms_per_iter = 0.0;
    double passes_per_iter = 0.0;
    double transforms_per_iter = 0.0;
};

TargetTrace run_to_targets(SolverKind kind, const Trial& trial, SolverConfig cfg,
                           const std::vector<double>& targets)
{
    const std::size_t T = targets.size();
    TargetTrace tr;
    tr.ms.assign(T, std::numeric_limits<double>::quiet_NaN());
    tr.iters.assign(T, -1);
    std::size_t next = 0;
    Clock::time_point t0;
    cfg.rel_change_tol = 0.0;
    cfg.monitor = [&](int k, const ComplexSignal& x) {
        const double err = rel_error(x, trial.signal);
        while (next < T && err <= targets[next]) {
            tr.ms[next] = ms_since(t0);
            tr.iters[next] = k;
            ++next;
        }
        return next == T;
    };
    t0 = Clock::now();
    try {
        const RecoveryResult res = run_solver(kind, trial.observed, trial.mask, cfg);
        if (res.iters > 0) {
            const double it = static_cast<double>(res.iters);
            tr.ms_per_iter = (res.total_ms - res.init_ms) / it;
            tr.passes_per_iter = static_cast<double>(res.column_passes) / it;
            tr.transforms_per_iter = static_cast<double>(res.transforms) / it;
        }
    } catch (const std::exception&) {
        // Unreached targets stay flagged.
    }
    return tr;
}

// Per-column cost of a convolution pass relative to one Gram multiply-add,
// divided by log2 of the transform length.
double measure_fft_constant(Index n, Index r)
{
    const Index ns = (n + 1) / 2;
    Rng rng(12345);
    std::normal_distribution<double> N(0.0, 1.0);
    Factor Z(ns, r);
    for (Index i = 0; i < Z.size(); ++i) Z.data()[i] = cplx(N(rng), N(rng));
    const CMatrix C = Z.adjoint() * Z;
    const int reps = 5;
    std::vector<double> t_fft, t_gram;
    CMatrix sink = CMatrix::Zero(ns, r);
    for (int i = 0; i < reps; ++i) {
        auto t0 = Clock::now();
        const ComplexSignal g = gstar_gram(Z);
        t_fft.push_back(ms_since(t0));
        t0 = Clock::now();
        sink.noalias() += Z * C;
        t_gram.push_back(ms_since(t0));
        sink(0, 0) += g[0];
    }
    const double per_col = median(t_fft) / static_cast<double>(r);
    const double unit = median(t_gram) / static_cast<double>(ns * r * r);
    const double len = static_cast<double>(2 * ns - 1);
    if (!(unit > 0.0) || !std::isfinite(sink.norm())) return 0.0;
    return per_col / (static_cast<double>(ns) * unit) / std::log2(len);
}

nlohmann::ordered_json config_json(const SolverConfig& c)
{
    nlohmann::ordered_json j;
    j["r"] = c.r;
    j["max_iters"] = c.max_iters;
    j["tol"] = c.rel_change_tol;
    if (const auto* f = std::get_if<FixedStep>(&c.step)) {
        j["step"] = "fixed";
        j["eta_prime"] = f->eta_prime;
    } else {
        const auto& b = std::get<Backtracking>(c.step);
        j["step"] = "backtrack";
        j["beta"] = b.beta;
        j["c_armijo"] = b.c_armijo;
        j["eta0_scale"] = b.eta0_scale;
        j["max_halvings"] = b.max_halvings;
    }
    j["projection"] = c.projection;
    if (c.mu) j["mu"] = *c.mu;
    j["eps0"] = c.eps0;
    j["sample_splitting"] = c.sample_splitting;
    j["splits"] = c.splits;
    j["divergence_factor"] = c.divergence_factor;
    j["balancing_weight"] = c.balancing_weight;
    j["init_svd"] = {{"oversample", c.init_svd.oversample},
                     {"power_iters", c.init_svd.power_iters},
                     {"tol", c.init_svd.tol},
                     {"max_iters", c.init_svd.max_iters}};
    return j;
}

}  // namespace

std::string to_string(SolverKind s) { return s == SolverKind::shgd ? "shgd" : "pgd"; }

SolverKind parse_solver(const std::string& s)
{
    if (s == "shgd") return SolverKind::shgd;
    if (s == "pgd") return SolverKind::pgd;
    throw InvalidArgument("unknown solver \"" + s + "\" (expected shgd or pgd)");
}

std::string to_string(ExperimentKind k)
{
    switch (k) {
        case ExperimentKind::phase: return "phase";
        case ExperimentKind::timing: return "timing";
        case ExperimentKind::noise: return "noise";
    }
    return "unknown";
}

RecoveryResult run_solver(SolverKind kind, const ComplexSignal& observed, const SamplingMask& mask,
                          const SolverConfig& cfg)
{
    return kind == SolverKind::shgd ? recover(observed, mask, cfg) : pgd_recover(observed, mask, cfg);
}

void ExperimentSpec::validate() const
{
    require(n >= 3, "experiment: n must be >= 3");
    require(trials >= 1, "experiment: trials must be >= 1");
    require(repetitions >= 1, "experiment: repetitions must be >= 1");
    require(threads >= 1, "experiment: threads must be >= 1");
    require(!r_values.empty(), "experiment: empty r range");
    for (Index r : r_values) require(r >= 1, "experiment: r must be >= 1");
    if (min_sep) require(*min_sep >= 0.0, "experiment: min_sep must be >= 0");
    switch (kind) {
        case ExperimentKind::phase:
            require(!p_values.empty(), "phase: empty p range");
            for (double p : p_values) require(p > 0.0 && p <= 1.0, "phase: p must be in (0, 1]");
            break;
        case ExperimentKind::timing:
            require(!targets.empty(), "timing: no target accuracies");
            require(!m_values.empty(), "timing: no m values");
            for (Index m : m_values) require(m >= 1, "timing: m must be >= 1");
            for (Index nn : n_values) require(nn >= 3, "timing: scaling n must be >= 3");
            break;
        case ExperimentKind::noise:
            require(!sigma_values.empty(), "noise: empty sigma range");
            require(!m_values.empty(), "noise: no m values");
            for (double s : sigma_values) require(s >= 0.0, "noise: sigma_e must be >= 0");
            for (Index m : m_values) require(m >= 1 && m <= n, "noise: m must be in [1, n]");
            break;
    }
    config.validate();
}

ExperimentSpec default_spec(ExperimentKind kind)
{
    ExperimentSpec s;
    s.kind = kind;
    switch (kind) {
        case ExperimentKind::phase:
            s.n = 127;
            s.r_values.clear();
            for (Index r = 1; r <= 16; ++r) s.r_values.push_back(r);
            s.p_values = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
            s.trials = 20;
            s.config.max_iters = 5000;
            break;
        case ExperimentKind::timing:
            s.n = 2046;
            s.r_values = {150};
            s.m_values = {876};
            s.targets = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7};
            s.trials = 10;
            s.config.step = FixedStep{};
            s.config.max_iters = 3000;
            s.min_sep = 1.5;
            break;
        case ExperimentKind::noise:
            s.n = 127;
            s.r_values = {12};
            s.m_values = {60, 120};
            s.sigma_values = {0.0, 1e-3, std::sqrt(10.0) * 1e-3, 1e-2, std::sqrt(10.0) * 1e-2,
                              1e-1, std::sqrt(10.0) * 1e-1, 1.0};
            s.trials = 20;
            s.min_sep = 1.5;
            break;
    }
    return s;
}

Trial make_trial(Index n, Index r, Index m, double sigma_e, std::optional<double> min_sep,
                 std::uint64_t seed)
{
    Rng rng(seed);
    ModelOptions mo;
    if (min_sep) mo.min_sep = *min_sep / static_cast<double>(n);
    Trial t;
    t.seed = seed;
    t.model = random_model(n, r, mo, rng);
    t.signal = synthesize(t.model);
    t.mask = uniform_mask(n, m, false, rng);
    t.observed = observe(t.signal, t.mask, sigma_e, rng);
    return t;
}

std::uint64_t trial_seed(std::uint64_t master, Index r, double cell, int trial)
{
    std::uint64_t s = mix_seed(master, static_cast<std::uint64_t>(r));
    s = mix_seed(s, std::bit_cast<std::uint64_t>(cell));
    return mix_seed(s, static_cast<std::uint64_t>(trial));
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn)
{
    const int workers = std::max(1, std::min(threads, count));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

Metadata collect_metadata()
{
    Metadata m;
    m.git_hash = HSCS_GIT_HASH;
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    m.created = buf;
    char host[256] = {0};
    if (gethostname(host, sizeof(host) - 1) == 0) m.hostname = host;
    m.hardware_threads = std::thread::hardware_concurrency();
#if defined(__clang__)
    m.compiler = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
    m.compiler = std::string("gcc ") + __VERSION__;
#else
    m.compiler = "unknown";
#endif
    return m;
}

const PhaseCell& GridResult::at(Index r, double p) const
{
    for (const auto& c : cells)
        if (c.r == r && std::abs(c.p - p) < 1e-12) return c;
    throw InvalidArgument("GridResult::at: no such cell");
}

GridResult run_phase(const ExperimentSpec& spec)
{
    require(spec.kind == ExperimentKind::phase, "run_phase: spec.kind must be phase");
    spec.validate();
    struct Outcome {
        bool success = false;
        bool solved = false;
        int iters = 0;
        double ms = 0.0;
    };
    const int P = static_cast<int>(spec.p_values.size());
    const int R = static_cast<int>(spec.r_values.size());
    const int cells = R * P;
    std::vector<Outcome> out(static_cast<std::size_t>(cells * spec.trials));

    parallel_for(cells * spec.trials, spec.threads, [&](int task) {
        const int cell = task / spec.trials;
        const int t = task % spec.trials;
        const Index r = spec.r_values[static_cast<std::size_t>(cell / P)];
        const double p = spec.p_values[static_cast<std::size_t>(cell % P)];
        const Index m = cell_m(spec.n, p);
        Outcome& o = out[static_cast<std::size_t>(task)];
        const auto t0 = Clock::now();
        try {
            const std::uint64_t seed = trial_seed(spec.seed, r, p, t);
            const Trial trial = make_trial(spec.n, r, m, 0.0, spec.min_sep, seed);
            SolverConfig cfg = spec.config;
            cfg.r = r;
            cfg.seed = seed;
            const RecoveryResult res = run_solver(spec.solver, trial.observed, trial.mask, cfg);
            o.solved = true;
            o.iters = res.iters;
            o.success = res.termination != Termination::diverged &&
                        rel_error(res.x_hat, trial.signal) <= spec.success_tol;
        } catch (const std::exception&) {
            o.success = false;
        }
        o.ms = spec.record_timing ? ms_since(t0) : 0.0;
    });

    GridResult g;
    g.meta = collect_metadata();
    for (int cell = 0; cell < cells; ++cell) {
        PhaseCell c;
        c.r = spec.r_values[static_cast<std::size_t>(cell / P)];
        c.p = spec.p_values[static_cast<std::size_t>(cell % P)];
        c.m = cell_m(spec.n, c.p);
        c.trials = spec.trials;
        int solved = 0;
        for (int t = 0; t < spec.trials; ++t) {
            const Outcome& o = out[static_cast<std::size_t>(cell * spec.trials + t)];
            c.successes += o.success ? 1 : 0;
            c.mean_ms += o.ms / spec.trials;
            if (o.solved) {
                ++solved;
                c.mean_iters += o.iters;
            }
        }
        c.mean_iters = solved > 0 ? c.mean_iters / solved : 0.0;
        g.cells.push_back(c);
    }
    return g;
}

TimingResult run_timing(const ExperimentSpec& spec)
{
    require(spec.kind == ExperimentKind::timing, "run_timing: spec.kind must be timing");
    spec.validate();
    TimingResult res;
    res.meta = collect_metadata();
    const Index r = spec.r_values.front();
    const Index m = spec.m_values.front();
    std::vector<double> targets = spec.targets;
    std::sort(targets.begin(), targets.end(), std::greater<>());
    const std::size_t T = targets.size();
    const SolverKind kinds[2] = {SolverKind::shgd, SolverKind::pgd};

    auto trace_median = [&](SolverKind kind, const Trial& trial, const SolverConfig& cfg,
                            const std::vector<double>& tg) {
        std::vector<TargetTrace> reps;
        for (int k = 0; k < spec.repetitions; ++k) reps.push_back(run_to_targets(kind, trial, cfg, tg));
        TargetTrace out = reps.front();
        for (std::size_t i = 0; i < tg.size(); ++i) {
            std::vector<double> v;
            for (const auto& rp : reps) v.push_back(rp.ms[i]);
            out.ms[i] = std::any_of(v.begin(), v.end(), [](double x) { return std::isnan(x); })
                            ? std::numeric_limits<double>::quiet_NaN()
                            : median(v);
        }
        std::vector<double> per;
        for (const auto& rp : reps) per.push_back(rp.ms_per_iter);
        out.ms_per_iter = median(per);
        return out;
    };

    if (!spec.n_values.empty()) {
        const std::vector<double> tg = {targets.back()};
        const int N = static_cast<int>(spec.n_values.size());
        std::vector<TargetTrace> traces(static_cast<std::size_t>(N * 2 * spec.trials));
        parallel_for(N * 2 * spec.trials, spec.threads, [&](int task) {
            const int t = task % spec.trials;
            const int s = (task / spec.trials) % 2;
            const Index n = spec.n_values[static_cast<std::size_t>(task / (2 * spec.trials))];
            const std::uint64_t seed = trial_seed(spec.seed, n, static_cast<double>(m), t);
            const Trial trial = make_trial(n, r, std::min(m, n), 0.0, spec.min_sep, seed);
            SolverConfig cfg = spec.config;
            cfg.r = r;
            cfg.seed = seed;
            traces[static_cast<std::size_t>(task)] = trace_median(kinds[s], trial, cfg, tg);
        });
        for (int i = 0; i < N; ++i)
            for (int s = 0; s < 2; ++s) {
                ScalingRow row;
                row.n = spec.n_values[static_cast<std::size_t>(i)];
                row.solver = to_string(kinds[s]);
                row.trials = spec.trials;
                for (int t = 0; t < spec.trials; ++t) {
                    const TargetTrace& tr = traces[static_cast<std::size_t>((i * 2 + s) * spec.trials + t)];
                    row.ms_per_iter += tr.ms_per_iter / spec.trials;
                    if (tr.iters[0] < 0) continue;
                    ++row.converged;
                    row.mean_ms += tr.ms[0];
                    row.mean_iters += tr.iters[0];
                }
                if (row.converged > 0) {
                    row.mean_ms /= row.converged;
                    row.mean_iters /= row.converged;
                }
                if (!spec.record_timing) row.mean_ms = row.ms_per_iter = 0.0;
                res.scaling.push_back(row);
            }
        return res;
    }

    std::vector<TargetTrace> traces(static_cast<std::size_t>(2 * spec.trials));
    parallel_for(2 * spec.trials, spec.threads, [&](int task) {
        const int t = task / 2;
        const int s = task % 2;
        const std::uint64_t seed = trial_seed(spec.seed, r, static_cast<double>(m), t);
        const Trial trial = make_trial(spec.n, r, m, 0.0, spec.min_sep, seed);
        SolverConfig cfg = spec.config;
        cfg.r = r;
        cfg.seed = seed;
        traces[static_cast<std::size_t>(task)] = trace_median(kinds[s], trial, cfg, targets);
    });
    auto trace = [&](int t, int s) -> const TargetTrace& {
        return traces[static_cast<std::size_t>(2 * t + s)];
    };

    for (int s = 0; s < 2; ++s)
        for (std::size_t i = 0; i < T; ++i) {
            TimingRow row;
            row.solver = to_string(kinds[s]);
            row.target = targets[i];
            row.trials = spec.trials;
            for (int t = 0; t < spec.trials; ++t) {
                const TargetTrace& tr = trace(t, s);
                row.passes_per_iter += tr.passes_per_iter / spec.trials;
                row.transforms_per_iter += tr.transforms_per_iter / spec.trials;
                if (tr.iters[i] < 0) continue;
                ++row.converged;
                row.mean_ms += tr.ms[i];
                row.mean_iters += tr.iters[i];
            }
            if (row.converged > 0) {
                row.mean_ms /= row.converged;
                row.mean_iters /= row.converged;
            }
            if (!spec.record_timing) row.mean_ms = 0.0;
            res.rows.push_back(row);
        }
    for (std::size_t i = 0; i < T; ++i) {
        TimingRow row;
        row.solver = "ratio";
        row.target = targets[i];
        row.trials = spec.trials;
        double sum_ratio = 0.0, sum_iters = 0.0;
        for (int t = 0; t < spec.trials; ++t) {
            const TargetTrace& a = trace(t, 0);
            const TargetTrace& b = trace(t, 1);
            if (a.iters[i] < 0 || b.iters[i] < 0 || !(b.ms[i] > 0.0)) continue;
            ++row.converged;
            sum_ratio += a.ms[i] / b.ms[i];
            sum_iters += static_cast<double>(a.iters[i]) / std::max(b.iters[i], 1);
        }
        if (row.converged > 0) {
            row.ratio = sum_ratio / row.converged;
            row.mean_iters = sum_iters / row.converged;
        }
        if (!spec.record_timing) row.ratio.reset();
        res.rows.push_back(row);
    }
    res.fft_constant = spec.record_timing ? measure_fft_constant(spec.n, r) : 0.0;
    TimingRow model;
    model.solver = "model";
    model.trials = 0;
    const double clog = res.fft_constant * std::log2(static_cast<double>(spec.n));
    const double rd = static_cast<double>(r);
    model.ratio = (2.0 * clog + rd) / (3.0 * clog + 4.0 * rd);
    res.rows.push_back(model);
    return res;
}

NoiseResult run_noise(const ExperimentSpec& spec)
{
    require(spec.kind == ExperimentKind::noise, "run_noise: spec.kind must be noise");
    spec.validate();
    const Index r = spec.r_values.front();
    const int S = static_cast<int>(spec.sigma_values.size());
    const int M = static_cast<int>(spec.m_values.size());
    std::vector<double> err(static_cast<std::size_t>(S * M * spec.trials),
                            std::numeric_limits<double>::quiet_NaN());
    parallel_for(S * M * spec.trials, spec.threads, [&](int task) {
        const int t = task % spec.trials;
        const int cell = task / spec.trials;
        const double sigma = spec.sigma_values[static_cast<std::size_t>(cell / M)];
        const Index m = spec.m_values[static_cast<std::size_t>(cell % M)];
        try {
            const std::uint64_t seed = trial_seed(spec.seed, m, sigma, t);
            const Trial trial = make_trial(spec.n, r, m, sigma, spec.min_sep, seed);
            SolverConfig cfg = spec.config;
            cfg.r = r;
            cfg.seed = seed;
            const RecoveryResult res = run_solver(spec.solver, trial.observed, trial.mask, cfg);
            if (res.termination != Termination::diverged)
                err[static_cast<std::size_t>(task)] = rel_error(res.x_hat, trial.signal);
        } catch (const std::exception&) {
        }
    });
    NoiseResult out;
    out.meta = collect_metadata();
    for (int cell = 0; cell < S * M; ++cell) {
        NoiseRow row;
        row.sigma_e = spec.sigma_values[static_cast<std::size_t>(cell / M)];
        row.snr_db = row.sigma_e > 0.0 ? -20.0 * std::log10(row.sigma_e)
                                       : std::numeric_limits<double>::infinity();
        row.m = spec.m_values[static_cast<std::size_t>(cell % M)];
        row.trials = spec.trials;
        int ok = 0;
        for (int t = 0; t < spec.trials; ++t) {
            const double e = err[static_cast<std::size_t>(cell * spec.trials + t)];
            if (std::isnan(e)) {
                ++row.failures;
                continue;
            }
            ++ok;
            row.mean_rmse += e;
        }
        row.mean_rmse = ok > 0 ? row.mean_rmse / ok : std::numeric_limits<double>::quiet_NaN();
        out.rows.push_back(row);
    }
    return out;
}

std::string to_csv(const GridResult& res)
{
    std::ostringstream s;
    s << header_line("phase", res.meta);
    s << "r,p,m,successes,trials,mean_iters,mean_ms\n";
    for (const auto& c : res.cells)
        s << c.r << ',' << num(c.p) << ',' << c.m << ',' << c.successes << ',' << c.trials << ','
          << num(c.mean_iters) << ',' << num(c.mean_ms) << '\n';
    return s.str();
}

std::string to_csv(const TimingResult& res)
{
    std::ostringstream s;
    s << header_line("timing", res.meta);
    if (!res.scaling.empty()) {
        s << "n,solver,converged,trials,mean_ms,mean_iters,ms_per_iter\n";
        for (const auto& r : res.scaling)
            s << r.n << ',' << r.solver << ',' << r.converged << ',' << r.trials << ','
              << num(r.mean_ms) << ',' << num(r.mean_iters) << ',' << num(r.ms_per_iter) << '\n';
        return s.str();
    }
    s << "solver,target,converged,trials,mean_ms,mean_iters,ratio,passes_per_iter,transforms_per_iter\n";
    for (const auto& r : res.rows)
        s << r.solver << ',' << num(r.target) << ',' << r.converged << ',' << r.trials << ','
          << num(r.mean_ms) << ',' << num(r.mean_iters) << ',' << (r.ratio ? num(*r.ratio) : "NA")
          << ',' << num(r.passes_per_iter) << ',' << num(r.transforms_per_iter) << '\n';
    return s.str();
}

std::string to_csv(const NoiseResult& res)
{
    std::ostringstream s;
    s << header_line("noise", res.meta);
    s << "sigma_e,snr_db,m,mean_rmse,trials,failures\n";
    for (const auto& r : res.rows)
        s << num(r.sigma_e) << ',' << num(r.snr_db) << ',' << r.m << ',' << num(r.mean_rmse) << ','
          << r.trials << ',' << r.failures << '\n';
    return s.str();
}

std::string sidecar_json(const ExperimentSpec& spec, const Metadata& meta)
{
    nlohmann::ordered_json j;
    j["kind"] = to_string(spec.kind);
    j["git_hash"] = meta.git_hash;
    j["created"] = meta.created;
    j["host"] = {{"hostname", meta.hostname},
                 {"hardware_threads", meta.hardware_threads},
                 {"compiler", meta.compiler}};
    nlohmann::ordered_json s;
    s["n"] = spec.n;
    s["r_values"] = spec.r_values;
    s["p_values"] = spec.p_values;
    s["m_values"] = spec.m_values;
    s["sigma_values"] = spec.sigma_values;
    s["targets"] = spec.targets;
    s["n_values"] = spec.n_values;
    s["trials"] = spec.trials;
    s["repetitions"] = spec.repetitions;
    s["seed"] = spec.seed;
    s["solver"] = to_string(spec.solver);
    s["min_sep"] = spec.min_sep ? nlohmann::ordered_json(*spec.min_sep) : nlohmann::ordered_json();
    s["success_tol"] = spec.success_tol;
    s["threads"] = spec.threads;
    s["record_timing"] = spec.record_timing;
    s["config"] = config_json(spec.config);
    j["spec"] = std::move(s);
    return j.dump(2) + "\n";
}

}  // namespace hscs
