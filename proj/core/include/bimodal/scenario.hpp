#ifndef BIMODAL_SCENARIO_HPP
#define BIMODAL_SCENARIO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bimodal/dynamics.hpp"
#include "bimodal/measurement.hpp"

namespace bimodal {

enum class ScenarioKind { Epr2, W, GhzProject, QutritProject, Custom };

// Flat, fully deterministic run description. Times are in units of tau,
// couplings and detuning in units of 1/tau.
struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::Custom;
    int atoms = 2;
    int n_photons = 1;
    int mu = 0;
    double g10_tau = 15.0;
    double g20_tau = 15.0;
    double delta_tau = 0.0;
    double t_sep_over_tau = 4.0 / 3.0;
    int steps = 8000;
    // Freeze time for the projection scenarios; defaults to the pulse
    // crossing t_sep/2 when unset.
    std::optional<double> t_freeze_over_tau;
    int record_every = 0;  // 0 = pick automatically (about 2000 rows)
    std::size_t sector_capacity = 100000;
    // Optional per-atom (s1, s2) coupling multipliers; empty = all ones.
    std::vector<std::pair<double, double>> per_atom_scale;

    // Accepts epr2, wN / w(N), ghz_project, qutrit_project, custom.
    static ScenarioConfig from_name(const std::string& name);

    std::string name() const;
    bool propagating() const;
    double freeze_time() const { return t_freeze_over_tau.value_or(t_sep_over_tau / 2.0); }
    // Throws ConfigError naming the offending field.
    void validate() const;
};

struct BranchResult {
    std::string label;
    double probability = 0.0;
    ReducedBasis basis;
    Eigen::VectorXcd post_state;
};

struct RunReport {
    std::string scenario;
    std::vector<std::pair<std::string, double>> final_populations;
    double fidelity = 0.0;
    double max_norm_drift = 0.0;
    double charge_drift = 0.0;
    // Distance from the zero (dark) eigenvalue to the nearest other
    // eigenvalue, minimized over the recorded grid: over the whole window,
    // and restricted to times where a pulse is within 1e-3 of its peak.
    double min_gap_tau = 0.0;
    double min_gap_active_tau = 0.0;
    double field_purity = 0.0;
    std::vector<std::pair<std::string, double>> branch_probabilities;
    double runtime_seconds = 0.0;  // informational; never written to CSV
};

struct ScenarioResult {
    ScenarioConfig config;
    Sector sector;
    RunReport report;
    Trajectory trajectory;                // empty for projection scenarios
    std::vector<double> fidelity_series;  // aligned with trajectory.points
    std::vector<BranchResult> branches;   // projection scenarios only
};

// Deterministic scenarios propagate over [-5 tau, T + 5 tau] and score
// against the scenario target; projection scenarios freeze the dark state
// at t_freeze and enumerate every measurement branch.
ScenarioResult run_scenario(const ScenarioConfig& config);

// Writes report.csv plus trajectory.csv (propagating) or branches.csv
// (projection) into `dir`, creating it if needed. Output is byte-stable
// across runs. Optionally drops a small matplotlib script next to them.
void write_artifacts(const ScenarioResult& result, const std::filesystem::path& dir,
                     bool emit_plot_script = false);

struct SweepTable {
    std::string axis;
    std::vector<std::string> columns;  // axis name first
    std::vector<std::vector<double>> rows;
};

// One run per value, rows in input order. Axis must name a numeric
// ScenarioConfig field (g0_tau sets both amplitudes at once).
SweepTable sweep(const ScenarioConfig& base, const std::string& axis,
                 const std::vector<double>& values);

void write_sweep_csv(const SweepTable& table, const std::filesystem::path& file);

// Shortest round-trip decimal form, used for all CSV output.
std::string format_csv_value(double v);

}  // namespace bimodal

#endif
