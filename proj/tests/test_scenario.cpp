#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "bimodal/errors.hpp"
#include "bimodal/metrics.hpp"
#include "bimodal/scenario.hpp"
#include "test_helpers.hpp"

using namespace bimodal;
using test::ket;

TEST_SUITE_BEGIN("scenario");

namespace {

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "bimodal_tests" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

double population_of(const RunReport& report, const std::string& label) {
    for (const auto& [key, value] : report.final_populations) {
        if (key == label) return value;
    }
    FAIL("no population entry ", label);
    return 0.0;
}

}  // namespace

TEST_CASE("scenario names round-trip and set their defaults") {
    CHECK(ScenarioConfig::from_name("epr2").kind == ScenarioKind::Epr2);
    CHECK(ScenarioConfig::from_name("w3").atoms == 3);
    CHECK(ScenarioConfig::from_name("w(4)").atoms == 4);
    CHECK(ScenarioConfig::from_name("qutrit_project").n_photons == 2);
    CHECK(ScenarioConfig::from_name("w12").name() == "w12");
    CHECK_THROWS_AS((void)ScenarioConfig::from_name("wx"), ConfigError);
    CHECK_THROWS_AS((void)ScenarioConfig::from_name("bell"), ConfigError);
}

TEST_CASE("config validation names the offending field") {
    ScenarioConfig c = ScenarioConfig::from_name("w3");
    c.n_photons = 2;
    CHECK_THROWS_WITH_AS((void)run_scenario(c), doctest::Contains("n_photons"), ConfigError);

    c = ScenarioConfig::from_name("epr2");
    c.atoms = 3;
    CHECK_THROWS_WITH_AS((void)run_scenario(c), doctest::Contains("atoms"), ConfigError);

    c = ScenarioConfig::from_name("epr2");
    c.t_sep_over_tau = 0.0;
    CHECK_THROWS_WITH_AS((void)run_scenario(c), doctest::Contains("t_sep_over_tau"), ConfigError);

    c = ScenarioConfig::from_name("qutrit_project");
    c.atoms = 3;
    CHECK_THROWS_AS((void)run_scenario(c), ConfigError);
}

TEST_CASE("epr2 endpoint") {
    const ScenarioResult result = run_scenario(ScenarioConfig::from_name("epr2"));
    const RunReport& r = result.report;
    CHECK(r.fidelity >= 0.98);
    CHECK(population_of(r, "gA.fB.na0.nb1") == doctest::Approx(0.5).epsilon(0.04));
    CHECK(population_of(r, "fA.gB.na0.nb1") == doctest::Approx(0.5).epsilon(0.04));
    CHECK(r.max_norm_drift <= 1e-9);
    CHECK(r.charge_drift <= 1e-9);
    CHECK(r.field_purity >= 0.98);
    CHECK(r.min_gap_active_tau > 0.0);
    // fidelity series rises monotonically in the tail once the pump dominates
    CHECK(result.fidelity_series.front() <= 1e-6);
    CHECK(result.fidelity_series.back() >= 0.98);
}

TEST_CASE("w3 endpoint populations sit at one third") {
    const ScenarioResult result = run_scenario(ScenarioConfig::from_name("w3"));
    for (const char* label : {"gA.gB.fC.na0.nb1", "gA.fB.gC.na0.nb1", "fA.gB.gC.na0.nb1"}) {
        CHECK(population_of(result.report, label) == doctest::Approx(1.0 / 3.0).epsilon(0.06));
    }
    CHECK(result.report.fidelity >= 0.98);
}

TEST_CASE("qutrit branch table matches the measurement module") {
    const ScenarioResult result = run_scenario(ScenarioConfig::from_name("qutrit_project"));
    REQUIRE(result.branches.size() == 4);
    CHECK(result.branches[0].label == "++");
    CHECK(result.branches[0].probability == doctest::Approx(5.0 / 12.0).epsilon(1e-12));
    CHECK(result.branches[1].label == "+-");
    CHECK(result.branches[1].probability == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
    CHECK(result.branches[2].label == "-+");
    CHECK(result.branches[3].label == "--");

    double total = 0.0;
    for (const BranchResult& b : result.branches) total += b.probability;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    // branch (+,+) is (|2,0> + |0,2> - 2 sqrt(2)|1,1>)/sqrt(10) up to phase
    Eigen::VectorXcd expected(3);
    expected << 1.0, -2.0 * std::sqrt(2.0), 1.0;
    expected /= std::sqrt(10.0);
    CHECK(test::phase_aligned_distance(result.branches[0].post_state, expected) <= 1e-12);
}

TEST_CASE("ghz branch probabilities follow the frozen coefficients") {
    ScenarioConfig c = ScenarioConfig::from_name("ghz_project");
    c.t_freeze_over_tau = c.t_sep_over_tau;  // pump peak: g1 = 15, g2 = 15 e^{-16/9}
    const ScenarioResult result = run_scenario(c);
    REQUIRE(result.branches.size() == 2);
    CHECK(result.branches[0].label == "B=g");
    CHECK(result.branches[1].label == "B=f");

    const double g1 = 15.0;
    const double g2 = 15.0 * std::exp(-16.0 / 9.0);
    const DarkStateCoefficients k = symmetric_dark_coefficients(g1, g2, 2, 0);
    const double P2 = k.norm * k.norm;
    CHECK(result.branches[0].probability ==
          doctest::Approx((k.alpha * k.alpha + k.gamma * k.gamma) / P2).epsilon(1e-12));
    CHECK(result.branches[1].probability ==
          doctest::Approx((k.beta * k.beta + k.gamma * k.gamma) / P2).epsilon(1e-12));
}

TEST_CASE("projection at a time with no pulses exits through the degenerate error") {
    ScenarioConfig c = ScenarioConfig::from_name("ghz_project");
    c.t_freeze_over_tau = -50.0;
    CHECK_THROWS_AS((void)run_scenario(c), DegenerateDarkStateError);
}

TEST_CASE("artifacts are byte-identical across runs") {
    SUBCASE("trajectory scenario") {
        ScenarioConfig c = ScenarioConfig::from_name("epr2");
        c.steps = 2000;
        const auto dir1 = fresh_dir("det1");
        const auto dir2 = fresh_dir("det2");
        write_artifacts(run_scenario(c), dir1);
        write_artifacts(run_scenario(c), dir2);
        CHECK(read_file(dir1 / "trajectory.csv") == read_file(dir2 / "trajectory.csv"));
        CHECK(read_file(dir1 / "report.csv") == read_file(dir2 / "report.csv"));
    }
    SUBCASE("branch scenario") {
        const ScenarioConfig c = ScenarioConfig::from_name("qutrit_project");
        const auto dir1 = fresh_dir("det3");
        const auto dir2 = fresh_dir("det4");
        write_artifacts(run_scenario(c), dir1);
        write_artifacts(run_scenario(c), dir2);
        CHECK(read_file(dir1 / "branches.csv") == read_file(dir2 / "branches.csv"));
    }
}

TEST_CASE("trajectory CSV schema follows the sector order") {
    ScenarioConfig c = ScenarioConfig::from_name("epr2");
    c.steps = 400;
    c.record_every = 100;
    const ScenarioResult result = run_scenario(c);
    const auto dir = fresh_dir("schema");
    write_artifacts(result, dir, true);

    std::ifstream in(dir / "trajectory.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "t_over_tau,g1_tau,g2_tau,pop_gA.gB.na1.nb0,pop_gA.eB.na0.nb0,pop_gA.fB.na0.nb1,"
          "pop_eA.gB.na0.nb0,pop_fA.gB.na0.nb1,fidelity,norm_drift");
    int rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == 5);  // 400/100 recorded steps plus the initial point
    CHECK(std::filesystem::exists(dir / "plot_trajectory.py"));
}

TEST_CASE("sweep over the common pulse amplitude is monotone in fidelity") {
    ScenarioConfig base = ScenarioConfig::from_name("epr2");
    base.steps = 4000;
    const SweepTable table = sweep(base, "g0_tau", {5.0, 10.0, 15.0, 20.0});
    REQUIRE(table.rows.size() == 4);
    REQUIRE(table.columns[0] == "g0_tau");
    REQUIRE(table.columns[1] == "fidelity");
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        CHECK(table.rows[i][1] >= table.rows[i - 1][1]);
    }
    CHECK(table.rows.back()[1] >= 0.99);
}

TEST_CASE("sweeping the detuning keeps the endpoint close to the dark target") {
    ScenarioConfig base = ScenarioConfig::from_name("epr2");
    base.steps = 4000;
    const SweepTable table = sweep(base, "delta_tau", {0.0, 2.0, 5.0});
    for (const auto& row : table.rows) CHECK(row[1] >= 0.9);
}

TEST_CASE("sweep edge cases") {
    const ScenarioConfig base = ScenarioConfig::from_name("epr2");

    SUBCASE("empty value list produces a header-only table") {
        const SweepTable table = sweep(base, "g10_tau", {});
        CHECK(table.rows.empty());
        CHECK(table.columns.size() == 7);
        const auto dir = fresh_dir("sweep_empty");
        write_sweep_csv(table, dir / "sweep.csv");
        const std::string contents = read_file(dir / "sweep.csv");
        CHECK(contents ==
              "g10_tau,fidelity,max_norm_drift,charge_drift,min_gap_tau,min_gap_active_tau,"
              "field_purity\n");
    }
    SUBCASE("non-numeric axes are rejected") {
        CHECK_THROWS_AS((void)sweep(base, "scenario", {1.0}), ConfigError);
    }
    SUBCASE("integer axes reject fractional values") {
        CHECK_THROWS_AS((void)sweep(base, "steps", {100.5}), ConfigError);
    }
    SUBCASE("projection sweeps tabulate branch probabilities") {
        const SweepTable table =
            sweep(ScenarioConfig::from_name("qutrit_project"), "t_freeze_over_tau", {0.5, 0.9});
        REQUIRE(table.columns.size() == 5);
        CHECK(table.columns[1] == "p_++");
        for (const auto& row : table.rows) {
            CHECK(row[1] + row[2] + row[3] + row[4] == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_SUITE_END();
