#include <sstream>

#include "doctest.h"
#include "hankel_scs/experiments.hpp"

using namespace hscs;

namespace {

std::string drop_first_line(const std::string& s) { return s.substr(s.find('\n') + 1); }

ExperimentSpec small_phase()
{
    ExperimentSpec s = default_spec(ExperimentKind::phase);
    s.n = 31;
    s.r_values = {1, 2};
    s.p_values = {0.3, 0.9};
    s.trials = 4;
    s.seed = 42;
    s.record_timing = false;
    return s;
}

}  // namespace

TEST_CASE("phase grid integrity and determinism")
{
    const ExperimentSpec s = small_phase();
    const GridResult a = run_phase(s);
    CHECK(a.cells.size() == 4);
    for (const auto& c : a.cells) CHECK(c.successes <= c.trials);
    const GridResult b = run_phase(s);
    CHECK(drop_first_line(to_csv(a)) == drop_first_line(to_csv(b)));

    ExperimentSpec par = s;
    par.threads = 3;
    CHECK(drop_first_line(to_csv(run_phase(par))) == drop_first_line(to_csv(a)));

    const std::string csv = to_csv(a);
    CHECK(csv.rfind("# hankel_scs phase", 0) == 0);
    CHECK(drop_first_line(csv).rfind("r,p,m,successes,trials,mean_iters,mean_ms\n", 0) == 0);
    CHECK(a.at(1, 0.9).rate() == 1.0);
}

TEST_CASE("easy and impossible corners")
{
    ExperimentSpec s = default_spec(ExperimentKind::phase);
    s.r_values = {1};
    s.p_values = {0.95};
    s.trials = 10;
    s.record_timing = false;
    CHECK(run_phase(s).cells[0].rate() == 1.0);
    s.r_values = {35};
    s.p_values = {0.05};
    s.trials = 3;
    s.config.max_iters = 50;
    CHECK(run_phase(s).cells[0].successes == 0);
}

TEST_CASE("noise sweep layout")
{
    ExperimentSpec s = default_spec(ExperimentKind::noise);
    s.n = 63;
    s.r_values = {3};
    s.m_values = {30, 50};
    s.sigma_values = {0.0, 0.1};
    s.trials = 3;
    const NoiseResult r = run_noise(s);
    CHECK(r.rows.size() == 4);
    CHECK(r.rows[0].mean_rmse <= 1e-6);
    CHECK(r.rows[2].snr_db == doctest::Approx(20.0));
    CHECK(drop_first_line(to_csv(r)).rfind("sigma_e,snr_db,m,mean_rmse", 0) == 0);
}

TEST_CASE("timing rows and counted passes")
{
    ExperimentSpec s = default_spec(ExperimentKind::timing);
    s.n = 127;
    s.r_values = {4};
    s.m_values = {76};
    s.targets = {1e-2, 1e-4};
    s.trials = 2;
    s.repetitions = 1;
    const TimingResult t = run_timing(s);
    int ratio_rows = 0;
    for (const auto& row : t.rows) {
        if (row.solver == "shgd") CHECK(row.passes_per_iter == doctest::Approx(8.0));
        if (row.solver == "pgd") CHECK(row.passes_per_iter == doctest::Approx(12.0));
        if (row.solver == "ratio") {
            ++ratio_rows;
            CHECK(row.ratio.has_value());
        }
        if (row.solver == "model") {
            REQUIRE(row.ratio.has_value());
            CHECK(*row.ratio >= 0.25);
            CHECK(*row.ratio <= 2.0 / 3.0);
        }
    }
    CHECK(ratio_rows == 2);
}

TEST_CASE("scaling sweep grows with n")
{
    ExperimentSpec s = default_spec(ExperimentKind::timing);
    s.n_values = {254, 510, 1022};
    s.r_values = {4};
    s.m_values = {100};
    s.targets = {1e-3};
    s.trials = 1;
    s.repetitions = 1;
    s.config.max_iters = 30;
    const TimingResult t = run_timing(s);
    REQUIRE(t.scaling.size() == 6);
    CHECK(t.scaling[0].ms_per_iter < t.scaling[4].ms_per_iter);
    CHECK(t.scaling[1].ms_per_iter < t.scaling[5].ms_per_iter);
}

TEST_CASE("spec validation and seeds")
{
    ExperimentSpec s = default_spec(ExperimentKind::phase);
    s.trials = 0;
    CHECK_THROWS_AS(run_phase(s), InvalidArgument);
    CHECK(trial_seed(1, 2, 0.5, 3) == trial_seed(1, 2, 0.5, 3));
    CHECK(trial_seed(1, 2, 0.5, 3) != trial_seed(1, 2, 0.6, 3));
    CHECK(parse_solver("pgd") == SolverKind::pgd);
    CHECK_THROWS_AS(parse_solver("fiht"), InvalidArgument);
    const std::string js = sidecar_json(default_spec(ExperimentKind::noise), collect_metadata());
    CHECK(js.find("\"git_hash\"") != std::string::npos);
    CHECK(js.find("\"config\"") != std::string::npos);
}
