// hankel-scs: signal generation, recovery and experiment driver.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hankel_scs/experiments.hpp"
#include "hankel_scs/freq_est.hpp"
#include "hankel_scs/io.hpp"
#include "hankel_scs/metrics.hpp"
#include "hankel_scs/pgd.hpp"
#include "hankel_scs/selftest.hpp"
#include "hankel_scs/shgd.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kSolver = 2, kSelftest = 3 };

struct Common {
    std::uint64_t seed = 0;
    std::string out;
    std::string config;
    int threads = 1;
};

void add_common(CLI::App* app, Common& c)
{
    app->add_option("--seed", c.seed, "Master seed");
    app->add_option("--out", c.out, "Output path (stdout when omitted)");
    app->add_option("--config", c.config, "Solver configuration overrides (JSON file)");
    app->add_option("--threads", c.threads, "Worker threads (HANKEL_SCS_THREADS overrides)")
        ->check(CLI::PositiveNumber);
}

int resolve_threads(int flag)
{
    if (const char* env = std::getenv("HANKEL_SCS_THREADS")) {
        try {
            const int v = std::stoi(env);
            if (v >= 1) return v;
        } catch (const std::exception&) {
        }
        throw hscs::InvalidArgument(std::string("HANKEL_SCS_THREADS must be a positive integer, got \"") +
                                    env + "\"");
    }
    return flag;
}

void emit(const std::string& path, const std::string& text)
{
    if (path.empty())
        std::cout << text;
    else
        hscs::io::write_file(path, text);
}

void emit_experiment(const Common& c, const hscs::ExperimentSpec& spec, const std::string& csv,
                     const hscs::Metadata& meta)
{
    emit(c.out, csv);
    if (!c.out.empty()) hscs::io::write_file(c.out + ".json", hscs::sidecar_json(spec, meta));
}

void apply_common(const Common& c, hscs::ExperimentSpec& spec)
{
    spec.seed = c.seed;
    spec.threads = resolve_threads(c.threads);
    if (!c.config.empty()) hscs::io::apply_config(hscs::io::read_file(c.config), spec.config);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Spectral compressed sensing by symmetric Hankel factorization"};
    app.require_subcommand(1);

    // gen
    Common gen_c;
    hscs::Index gen_n = 127, gen_r = 4, gen_m = 76;
    double gen_sigma = 0.0;
    std::optional<double> gen_sep;
    double gen_damping = 0.0;
    bool gen_replacement = false;
    std::string gen_model_out;
    auto* gen = app.add_subcommand("gen", "Generate a random model and its observation (SSIG-JSON)");
    add_common(gen, gen_c);
    gen->add_option("--n", gen_n, "Signal length")->check(CLI::Range(3, 1 << 24));
    gen->add_option("--r", gen_r, "Number of modes")->check(CLI::PositiveNumber);
    gen->add_option("--m", gen_m, "Number of observed samples")->check(CLI::PositiveNumber);
    gen->add_option("--sigma", gen_sigma, "Relative noise level sigma_e")->check(CLI::NonNegativeNumber);
    gen->add_option("--min-sep", gen_sep, "Minimum wrap-around separation in units of 1/n");
    gen->add_option("--damping", gen_damping, "Upper bound of uniform per-sample damping");
    gen->add_flag("--with-replacement", gen_replacement, "Sample indices with replacement");
    gen->add_option("--model-out", gen_model_out, "Write the ground truth (SMODEL-JSON)");

    // recover
    Common rec_c;
    std::string rec_input, rec_solver = "shgd", rec_step = "backtrack", rec_truth;
    hscs::Index rec_rank = 0;
    double rec_tol = 1e-7;
    int rec_max_iters = 1000;
    bool rec_modes = false;
    auto* rec = app.add_subcommand("recover", "Recover a signal from an SSIG-JSON observation");
    add_common(rec, rec_c);
    rec->add_option("--input", rec_input, "Observation (SSIG-JSON)")->required();
    rec->add_option("--rank", rec_rank, "Model order r")->required()->check(CLI::PositiveNumber);
    rec->add_option("--solver", rec_solver, "shgd or pgd")->check(CLI::IsMember({"shgd", "pgd"}));
    rec->add_option("--step", rec_step, "fixed:<eta'> or backtrack");
    rec->add_option("--tol", rec_tol, "Relative-change tolerance")->check(CLI::NonNegativeNumber);
    rec->add_option("--max-iters", rec_max_iters, "Iteration cap")->check(CLI::NonNegativeNumber);
    rec->add_option("--truth", rec_truth, "Ground truth (SMODEL-JSON); reports the relative error");
    rec->add_flag("--modes", rec_modes, "Print ESPRIT mode estimates of the recovered signal");

    // phase
    Common ph_c;
    hscs::ExperimentSpec ph = hscs::default_spec(hscs::ExperimentKind::phase);
    std::string ph_solver = "shgd";
    std::optional<double> ph_sep;
    bool ph_full = false, ph_no_timing = false;
    auto* phase = app.add_subcommand("phase", "Phase-transition grid over (r, p)");
    add_common(phase, ph_c);
    phase->add_option("--n", ph.n, "Signal length");
    phase->add_option("--r-values", ph.r_values, "Ranks")->delimiter(',');
    phase->add_option("--p-values", ph.p_values, "Sampling ratios")->delimiter(',');
    phase->add_option("--trials", ph.trials, "Trials per cell");
    phase->add_option("--solver", ph_solver, "shgd or pgd")->check(CLI::IsMember({"shgd", "pgd"}));
    phase->add_option("--min-sep", ph_sep, "Minimum separation in units of 1/n");
    phase->add_option("--success-tol", ph.success_tol, "Success threshold on the relative error");
    phase->add_flag("--full", ph_full, "Full grid: r = 1..35, p = 0.05..0.95, 50 trials");
    phase->add_flag("--no-timing", ph_no_timing, "Write 0 in wall-time columns");

    // timing
    Common tm_c;
    hscs::ExperimentSpec tm = hscs::default_spec(hscs::ExperimentKind::timing);
    hscs::Index tm_r = 150, tm_m = 876;
    bool tm_scaling = false, tm_no_timing = false;
    std::optional<double> tm_sep;
    auto* timing = app.add_subcommand("timing", "Time-to-accuracy comparison of SHGD and PGD");
    add_common(timing, tm_c);
    timing->add_option("--n", tm.n, "Signal length");
    timing->add_option("--r", tm_r, "Model order");
    timing->add_option("--m", tm_m, "Observed samples");
    timing->add_option("--targets", tm.targets, "Target relative errors")->delimiter(',');
    timing->add_option("--trials", tm.trials, "Seeds");
    timing->add_option("--reps", tm.repetitions, "Repetitions per run (median)");
    timing->add_option("--max-iters", tm.config.max_iters, "Iteration cap");
    timing->add_option("--min-sep", tm_sep, "Minimum separation in units of 1/n");
    timing->add_flag("--scaling", tm_scaling, "Sweep n = 2^j - 2, j = 11..14 (defaults r=30, m=512)");
    timing->add_flag("--no-timing", tm_no_timing, "Write 0 in wall-time columns");

    // noise
    Common nz_c;
    hscs::ExperimentSpec nz = hscs::default_spec(hscs::ExperimentKind::noise);
    hscs::Index nz_r = 12;
    std::string nz_solver = "shgd";
    auto* noise = app.add_subcommand("noise", "Relative error versus noise level");
    add_common(noise, nz_c);
    noise->add_option("--n", nz.n, "Signal length");
    noise->add_option("--r", nz_r, "Model order");
    noise->add_option("--m-values", nz.m_values, "Observed samples")->delimiter(',');
    noise->add_option("--sigmas", nz.sigma_values, "Noise levels sigma_e")->delimiter(',');
    noise->add_option("--trials", nz.trials, "Trials per cell");
    noise->add_option("--solver", nz_solver, "shgd or pgd")->check(CLI::IsMember({"shgd", "pgd"}));

    // selftest
    hscs::SelftestOptions st;
    std::string st_mutate;
    auto* self = app.add_subcommand("selftest", "Run the randomized property suite");
    self->add_option("--cases", st.cases, "Random cases per property")->check(CLI::PositiveNumber);
    self->add_option("--seed", st.seed, "Seed");
    self->add_option("--mutate", st_mutate, "Negative control: corrupt a component (weights)")
        ->check(CLI::IsMember({"weights"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*gen) {
            hscs::Rng rng(gen_c.seed);
            hscs::ModelOptions mo;
            if (gen_sep) mo.min_sep = *gen_sep / static_cast<double>(gen_n);
            if (gen_damping > 0.0) {
                mo.damped = true;
                mo.damping_hi = gen_damping;
            }
            const hscs::SpectralModel model = hscs::random_model(gen_n, gen_r, mo, rng);
            const hscs::SamplingMask mask = hscs::uniform_mask(gen_n, gen_m, gen_replacement, rng);
            const hscs::ComplexSignal obs = hscs::observe(hscs::synthesize(model), mask, gen_sigma, rng);
            emit(gen_c.out, hscs::io::ssig_to_string(obs, mask));
            if (!gen_model_out.empty())
                hscs::io::write_file(gen_model_out, hscs::io::smodel_to_string(model));
            return kOk;
        }

        if (*rec) {
            const hscs::io::SignalFile in = hscs::io::parse_ssig(hscs::io::read_file(rec_input));
            hscs::SolverConfig cfg;
            if (!rec_c.config.empty()) hscs::io::apply_config(hscs::io::read_file(rec_c.config), cfg);
            cfg.r = rec_rank;
            cfg.seed = rec_c.seed;
            if (rec->count("--step") || rec_c.config.empty()) cfg.step = hscs::io::parse_step(rec_step);
            if (rec->count("--tol") || rec_c.config.empty()) cfg.rel_change_tol = rec_tol;
            if (rec->count("--max-iters") || rec_c.config.empty()) cfg.max_iters = rec_max_iters;
            const hscs::SolverKind kind = hscs::parse_solver(rec_solver);
            const hscs::RecoveryResult res = hscs::run_solver(kind, in.samples, in.mask, cfg);
            emit(rec_c.out, hscs::io::result_to_string(res, kind == hscs::SolverKind::pgd));
            std::ostream& info = rec_c.out.empty() ? std::cerr : std::cout;
            info << "termination " << hscs::to_string(res.termination) << ", iterations " << res.iters
                 << ", " << std::setprecision(4) << res.total_ms << " ms\n";
            if (!rec_truth.empty()) {
                const hscs::SpectralModel truth = hscs::io::parse_smodel(hscs::io::read_file(rec_truth));
                info << "relative error " << std::setprecision(6)
                     << hscs::rel_error(res.x_hat, hscs::synthesize(truth)) << "\n";
            }
            if (rec_modes) {
                const hscs::ModeEstimate est = hscs::esprit(res.x_hat, rec_rank);
                info << "freq damping amp_re amp_im\n" << std::setprecision(10);
                for (std::size_t k = 0; k < est.freqs.size(); ++k)
                    info << est.freqs[k] << ' ' << est.dampings[k] << ' ' << est.amps[k].real() << ' '
                         << est.amps[k].imag() << "\n";
            }
            const bool failed = res.termination == hscs::Termination::diverged ||
                                res.termination == hscs::Termination::stalled;
            return failed ? kSolver : kOk;
        }

        if (*phase) {
            if (ph_full) {
                ph.r_values.clear();
                for (hscs::Index r = 1; r <= 35; ++r) ph.r_values.push_back(r);
                ph.p_values.clear();
                for (int i = 1; i <= 19; ++i) ph.p_values.push_back(0.05 * i);
                ph.trials = 50;
            }
            ph.solver = hscs::parse_solver(ph_solver);
            ph.min_sep = ph_sep;
            ph.record_timing = !ph_no_timing;
            apply_common(ph_c, ph);
            const hscs::GridResult g = hscs::run_phase(ph);
            emit_experiment(ph_c, ph, hscs::to_csv(g), g.meta);
            return kOk;
        }

        if (*timing) {
            if (tm_scaling) {
                if (!timing->count("--r")) tm_r = 30;
                if (!timing->count("--m")) tm_m = 512;
                for (int j = 11; j <= 14; ++j) tm.n_values.push_back((hscs::Index{1} << j) - 2);
            }
            tm.r_values = {tm_r};
            tm.m_values = {tm_m};
            if (tm_sep) tm.min_sep = tm_sep;
            tm.record_timing = !tm_no_timing;
            apply_common(tm_c, tm);
            const hscs::TimingResult t = hscs::run_timing(tm);
            emit_experiment(tm_c, tm, hscs::to_csv(t), t.meta);
            return kOk;
        }

        if (*noise) {
            nz.r_values = {nz_r};
            nz.solver = hscs::parse_solver(nz_solver);
            apply_common(nz_c, nz);
            const hscs::NoiseResult nr = hscs::run_noise(nz);
            emit_experiment(nz_c, nz, hscs::to_csv(nr), nr.meta);
            return kOk;
        }

        if (*self) {
            st.corrupt_weights = st_mutate == "weights";
            bool ok = true;
            for (const auto& c : hscs::run_selftest(st)) {
                std::cout << hscs::format(c) << "\n";
                ok = ok && c.pass;
            }
            std::cout << (ok ? "selftest: all properties hold\n" : "selftest: FAILED\n");
            return ok ? kOk : kSelftest;
        }
    } catch (const hscs::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const hscs::NumericalError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kSolver;
    }
    return kUsage;
}
