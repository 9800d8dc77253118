#include "bimodal/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <set>

#include "bimodal/dark_state.hpp"
#include "bimodal/errors.hpp"
#include "bimodal/metrics.hpp"

namespace bimodal {

namespace {

constexpr double kWindowMargin = 5.0;  // Gaussian tails < 2e-11 of peak
constexpr double kLoudFailure = 1e-6;

int parse_w_atoms(const std::string& name) {
    std::string digits = name.substr(1);
    if (digits.size() >= 2 && digits.front() == '(' && digits.back() == ')') {
        digits = digits.substr(1, digits.size() - 2);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        return -1;
    }
    return std::stoi(digits);
}

}  // namespace

ScenarioConfig ScenarioConfig::from_name(const std::string& name) {
    ScenarioConfig c;
    if (name == "epr2") {
        c.kind = ScenarioKind::Epr2;
        c.atoms = 2;
        c.n_photons = 1;
    } else if (!name.empty() && name.front() == 'w') {
        const int atoms = parse_w_atoms(name);
        if (atoms < 0) throw ConfigError("scenario: cannot parse atom count in '" + name + "'");
        c.kind = ScenarioKind::W;
        c.atoms = atoms;
        c.n_photons = 1;
    } else if (name == "ghz_project") {
        c.kind = ScenarioKind::GhzProject;
        c.atoms = 2;
        c.n_photons = 2;
    } else if (name == "qutrit_project") {
        c.kind = ScenarioKind::QutritProject;
        c.atoms = 2;
        c.n_photons = 2;
    } else if (name == "custom") {
        c.kind = ScenarioKind::Custom;
    } else {
        throw ConfigError("scenario: unknown name '" + name +
                          "' (expected epr2, w<N>, ghz_project, qutrit_project, custom)");
    }
    return c;
}

std::string ScenarioConfig::name() const {
    switch (kind) {
        case ScenarioKind::Epr2: return "epr2";
        case ScenarioKind::W: return "w" + std::to_string(atoms);
        case ScenarioKind::GhzProject: return "ghz_project";
        case ScenarioKind::QutritProject: return "qutrit_project";
        case ScenarioKind::Custom: return "custom";
    }
    return "?";
}

bool ScenarioConfig::propagating() const {
    return kind == ScenarioKind::Epr2 || kind == ScenarioKind::W || kind == ScenarioKind::Custom;
}

void ScenarioConfig::validate() const {
    auto fail = [](const std::string& field, const std::string& why) {
        throw ConfigError(field + ": " + why);
    };
    if (atoms < 1) fail("atoms", "need at least one atom");
    if (n_photons < 0) fail("n_photons", "must be non-negative");
    if (mu < 0) fail("mu", "must be non-negative");
    if (g10_tau < 0 || !std::isfinite(g10_tau)) fail("g10_tau", "must be finite and >= 0");
    if (g20_tau < 0 || !std::isfinite(g20_tau)) fail("g20_tau", "must be finite and >= 0");
    if (!std::isfinite(delta_tau)) fail("delta_tau", "must be finite");
    if (!(t_sep_over_tau > 0)) {
        fail("t_sep_over_tau", "pulse separation must be positive (counterintuitive order)");
    }
    if (steps < 1) fail("steps", "need at least one step");
    if (record_every < 0) fail("record_every", "must be >= 0");
    if (sector_capacity < 1) fail("sector_capacity", "must be positive");
    if (!per_atom_scale.empty() && per_atom_scale.size() != static_cast<std::size_t>(atoms)) {
        fail("per_atom_scale", "needs one (s1, s2) pair per atom");
    }

    switch (kind) {
        case ScenarioKind::Epr2:
            if (atoms != 2) fail("atoms", "epr2 uses exactly two atoms");
            if (n_photons != 1) fail("n_photons", "epr2 starts from a single a-mode photon");
            break;
        case ScenarioKind::W:
            if (atoms < 2) fail("atoms", "w(N) needs N >= 2");
            if (n_photons != 1) fail("n_photons", "w(N) starts from a single a-mode photon");
            break;
        case ScenarioKind::GhzProject:
            if (atoms < 2) fail("atoms", "ghz_project needs at least two atoms");
            if (n_photons < 1) fail("n_photons", "ghz_project needs n >= 1");
            break;
        case ScenarioKind::QutritProject:
            if (atoms != 2) fail("atoms", "qutrit_project uses exactly two atoms");
            if (n_photons < 1) fail("n_photons", "qutrit_project needs n >= 1");
            break;
        case ScenarioKind::Custom:
            break;
    }
}

namespace {

ModelConfig make_model(const ScenarioConfig& c, const Sector& sector) {
    ModelConfig m;
    m.delta = c.delta_tau;
    m.schedule.g10 = c.g10_tau;
    m.schedule.g20 = c.g20_tau;
    m.schedule.tau = 1.0;
    m.schedule.separation = c.t_sep_over_tau;
    m.schedule.per_atom_scale = c.per_atom_scale;
    m.sector = sector;
    return m;
}

BasisState ground_state(const ScenarioConfig& c) {
    BasisState s;
    s.atoms.assign(c.atoms, AtomLevel::G);
    s.n_a = c.n_photons;
    s.n_b = c.mu;
    return s;
}

// Distance from the dark (zero) eigenvalue to the nearest eigenvalue
// outside the numerical null cluster.
double spectral_gap(const Eigen::MatrixXcd& H) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(H, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd w = eig.eigenvalues().cwiseAbs();
    const double scale = w.maxCoeff();
    double gap = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (w(i) > 1e-10 * scale && (gap == 0.0 || w(i) < gap)) gap = w(i);
    }
    return gap;
}

void run_propagating(const ScenarioConfig& c, ScenarioResult& result) {
    const ModelConfig model = make_model(c, result.sector);
    const Sector& sector = result.sector;

    StateVector psi0;
    psi0.amplitudes = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(sector.size()));
    psi0.amplitudes(static_cast<Eigen::Index>(sector.index_of(ground_state(c)))) = 1.0;

    TimeGrid grid{-kWindowMargin, c.t_sep_over_tau + kWindowMargin, c.steps};
    psi0.t = grid.t_start;
    const int record_every =
        c.record_every > 0 ? c.record_every : std::max(1, c.steps / 2000);
    result.trajectory = propagate(model, psi0, grid, record_every);

    // Score either against the named endpoint or, for custom runs, against
    // the instantaneous dark state.
    std::optional<StateVector> target;
    if (c.kind != ScenarioKind::Custom) target = targets::w_state(sector);
    result.fidelity_series.reserve(result.trajectory.points.size());
    for (const StateVector& point : result.trajectory.points) {
        if (target) {
            result.fidelity_series.push_back(fidelity(point, *target));
        } else {
            auto dark = lambda_dark_states(
                sector, coupling_at(model.schedule, sector.atom_count(), point.t));
            result.fidelity_series.push_back(
                dark.size() == 1 ? fidelity(point, dark.front())
                                 : std::numeric_limits<double>::quiet_NaN());
        }
    }

    RunReport& report = result.report;
    report.fidelity = result.fidelity_series.back();
    report.max_norm_drift = result.trajectory.max_norm_drift;

    const Eigen::VectorXd ka = charge_diagonal_a(sector);
    const Eigen::VectorXd kb = charge_diagonal_b(sector);
    const double ka0 = static_cast<double>(sector.charges().k_a);
    const double kb0 = static_cast<double>(sector.charges().k_b);
    report.min_gap_tau = std::numeric_limits<double>::infinity();
    report.min_gap_active_tau = std::numeric_limits<double>::infinity();
    const double peak = std::max(c.g10_tau, c.g20_tau);
    for (const StateVector& point : result.trajectory.points) {
        const Eigen::VectorXd pops = population_vector(point);
        report.charge_drift = std::max(report.charge_drift, std::abs(pops.dot(ka) - ka0));
        report.charge_drift = std::max(report.charge_drift, std::abs(pops.dot(kb) - kb0));

        const CouplingValues g = coupling_at(model.schedule, sector.atom_count(), point.t);
        const double gap = spectral_gap(hamiltonian_static(sector, c.delta_tau, g));
        report.min_gap_tau = std::min(report.min_gap_tau, gap);
        const double strongest =
            std::max(*std::max_element(g.g1.begin(), g.g1.end()),
                     *std::max_element(g.g2.begin(), g.g2.end()));
        if (strongest >= 1e-3 * peak) {
            report.min_gap_active_tau = std::min(report.min_gap_active_tau, gap);
        }
    }
    if (report.charge_drift > kLoudFailure) {
        throw NumericalError("charge expectation drifted by " +
                             std::to_string(report.charge_drift));
    }

    const StateVector& final_state = result.trajectory.points.back();
    for (const auto& [ket, pop] : populations(final_state, sector)) {
        report.final_populations.emplace_back(ket_label(ket), pop);
    }
    report.field_purity = purity(reduced_field(final_state, sector).rho);
}

void run_projection(const ScenarioConfig& c, ScenarioResult& result) {
    const ModelConfig model = make_model(c, result.sector);
    const StateVector frozen = freeze_state(model, c.freeze_time());

    for (const auto& [ket, pop] : populations(frozen, result.sector)) {
        result.report.final_populations.emplace_back(ket_label(ket), pop);
    }

    if (c.kind == ScenarioKind::GhzProject) {
        const int measured = c.atoms - 1;
        const char letter = static_cast<char>('A' + measured);
        for (AtomLevel level : {AtomLevel::G, AtomLevel::F}) {
            MeasurementOutcome outcome =
                project(frozen, result.sector, AtomLevelProjector{measured, level});
            BranchResult branch;
            branch.label = std::string(1, letter) + "=" + level_char(level);
            branch.probability = outcome.probability;
            branch.basis = std::move(outcome.basis);
            branch.post_state = std::move(outcome.post_state);
            result.branches.push_back(std::move(branch));
        }
    } else {
        for (Sign a : {Sign::Plus, Sign::Minus}) {
            for (Sign b : {Sign::Plus, Sign::Minus}) {
                MeasurementOutcome outcome = project_qutrit(frozen, result.sector, a, b);
                BranchResult branch;
                branch.label = std::string{sign_char(a), sign_char(b)};
                branch.probability = outcome.probability;
                branch.basis = std::move(outcome.basis);
                branch.post_state = std::move(outcome.post_state);
                result.branches.push_back(std::move(branch));
            }
        }
    }
    for (const BranchResult& b : result.branches) {
        result.report.branch_probabilities.emplace_back(b.label, b.probability);
    }
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    config.validate();

    ScenarioResult result;
    result.config = config;
    result.sector = build_sector(ground_state(config), config.sector_capacity);
    result.report.scenario = config.name();

    if (config.propagating()) {
        run_propagating(config, result);
    } else {
        run_projection(config, result);
    }

    result.report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

std::string format_csv_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void write_trajectory_csv(const ScenarioResult& result, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw Error("cannot open " + file.string() + " for writing");

    out << "t_over_tau,g1_tau,g2_tau";
    for (const BasisState& s : result.sector.states()) out << ",pop_" << ket_label(s);
    out << ",fidelity,norm_drift\n";

    const ScenarioConfig& c = result.config;
    for (std::size_t i = 0; i < result.trajectory.points.size(); ++i) {
        const StateVector& point = result.trajectory.points[i];
        // base pulse envelopes, without any per-atom scaling
        const double g1 =
            c.g10_tau * std::exp(-(point.t - c.t_sep_over_tau) * (point.t - c.t_sep_over_tau));
        const double g2 = c.g20_tau * std::exp(-point.t * point.t);
        out << format_csv_value(point.t) << ',' << format_csv_value(g1) << ','
            << format_csv_value(g2);
        for (Eigen::Index j = 0; j < point.amplitudes.size(); ++j) {
            out << ',' << format_csv_value(std::norm(point.amplitudes(j)));
        }
        out << ',' << format_csv_value(result.fidelity_series[i]) << ','
            << format_csv_value(result.trajectory.norm_drift[i]) << '\n';
    }
}

void write_branches_csv(const ScenarioResult& result, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw Error("cannot open " + file.string() + " for writing");

    // Shared column set: the union of the branch bases in reduced order.
    std::vector<std::pair<ReducedKet, const ReducedBasis*>> columns;
    auto less = [](const auto& a, const auto& b) { return reduced_ket_less(a.first, b.first); };
    for (const BranchResult& branch : result.branches) {
        for (const ReducedKet& ket : branch.basis.kets) {
            std::pair<ReducedKet, const ReducedBasis*> entry{ket, &branch.basis};
            auto it = std::lower_bound(columns.begin(), columns.end(), entry, less);
            if (it == columns.end() || !(it->first == ket)) columns.insert(it, entry);
        }
    }

    out << "branch,probability";
    for (const auto& [ket, basis] : columns) {
        const std::string label = ket_label(ket, *basis);
        out << ",re_" << label << ",im_" << label;
    }
    out << '\n';

    for (const BranchResult& branch : result.branches) {
        out << branch.label << ',' << format_csv_value(branch.probability);
        for (const auto& [ket, basis] : columns) {
            std::complex<double> amp = 0.0;
            for (std::size_t i = 0; i < branch.basis.kets.size(); ++i) {
                if (branch.basis.kets[i] == ket) {
                    amp = branch.post_state(static_cast<Eigen::Index>(i));
                    break;
                }
            }
            out << ',' << format_csv_value(amp.real()) << ',' << format_csv_value(amp.imag());
        }
        out << '\n';
    }
}

void write_report_csv(const ScenarioResult& result, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw Error("cannot open " + file.string() + " for writing");
    const ScenarioConfig& c = result.config;
    const RunReport& r = result.report;

    out << "key,value\n";
    out << "scenario," << r.scenario << '\n';
    out << "atoms," << c.atoms << '\n';
    out << "n_photons," << c.n_photons << '\n';
    out << "mu," << c.mu << '\n';
    out << "g10_tau," << format_csv_value(c.g10_tau) << '\n';
    out << "g20_tau," << format_csv_value(c.g20_tau) << '\n';
    out << "delta_tau," << format_csv_value(c.delta_tau) << '\n';
    out << "t_sep_over_tau," << format_csv_value(c.t_sep_over_tau) << '\n';
    out << "steps," << c.steps << '\n';
    if (!c.propagating()) {
        out << "t_freeze_over_tau," << format_csv_value(c.freeze_time()) << '\n';
    } else {
        out << "fidelity," << format_csv_value(r.fidelity) << '\n';
        out << "max_norm_drift," << format_csv_value(r.max_norm_drift) << '\n';
        out << "charge_drift," << format_csv_value(r.charge_drift) << '\n';
        out << "min_gap_tau," << format_csv_value(r.min_gap_tau) << '\n';
        out << "min_gap_active_tau," << format_csv_value(r.min_gap_active_tau) << '\n';
        out << "field_purity," << format_csv_value(r.field_purity) << '\n';
    }
    for (const auto& [label, pop] : r.final_populations) {
        out << "pop_" << label << ',' << format_csv_value(pop) << '\n';
    }
    for (const auto& [label, p] : r.branch_probabilities) {
        out << "p_" << label << ',' << format_csv_value(p) << '\n';
    }
}

constexpr const char* kPlotScript = R"(#!/usr/bin/env python3
"""Plot populations and fidelity from a trajectory.csv produced alongside."""
import csv
import sys
from pathlib import Path

import matplotlib.pyplot as plt

path = Path(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).parent / "trajectory.csv")
with open(path) as fh:
    rows = list(csv.DictReader(fh))

t = [float(r["t_over_tau"]) for r in rows]
fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(8, 8))
for key in rows[0]:
    if key.startswith("pop_") and max(float(r[key]) for r in rows) > 1e-3:
        ax1.plot(t, [float(r[key]) for r in rows], label=key[4:])
ax1.set_ylabel("population")
ax1.legend(fontsize=8)
ax2.plot(t, [float(r["fidelity"]) for r in rows], color="k")
ax2.set_xlabel("t / tau")
ax2.set_ylabel("fidelity")
fig.tight_layout()
out = path.with_name("trajectory.png")
fig.savefig(out, dpi=150)
print(f"wrote {out}")
)";

}  // namespace

void write_artifacts(const ScenarioResult& result, const std::filesystem::path& dir,
                     bool emit_plot_script) {
    std::filesystem::create_directories(dir);
    write_report_csv(result, dir / "report.csv");
    if (result.config.propagating()) {
        write_trajectory_csv(result, dir / "trajectory.csv");
        if (emit_plot_script) {
            std::ofstream out(dir / "plot_trajectory.py");
            out << kPlotScript;
        }
    } else {
        write_branches_csv(result, dir / "branches.csv");
    }
}

namespace {

void assign_integer_field(int& field, const std::string& axis, double value) {
    const double rounded = std::round(value);
    if (std::abs(value - rounded) > 1e-9) {
        throw ConfigError("sweep axis " + axis + " takes integer values; got " +
                          format_csv_value(value));
    }
    field = static_cast<int>(rounded);
}

}  // namespace

SweepTable sweep(const ScenarioConfig& base, const std::string& axis,
                 const std::vector<double>& values) {
    const std::set<std::string> numeric_axes = {
        "g0_tau",  "g10_tau", "g20_tau", "delta_tau",  "t_sep_over_tau",
        "t_freeze_over_tau", "steps",   "n_photons",  "mu",   "atoms"};
    if (!numeric_axes.contains(axis)) {
        throw ConfigError("sweep axis '" + axis + "' is not a numeric scenario field");
    }

    SweepTable table;
    table.axis = axis;
    table.columns.push_back(axis);
    if (base.propagating()) {
        for (const char* c : {"fidelity", "max_norm_drift", "charge_drift", "min_gap_tau",
                              "min_gap_active_tau", "field_purity"}) {
            table.columns.push_back(c);
        }
    }

    for (double value : values) {
        ScenarioConfig c = base;
        if (axis == "g0_tau") {
            c.g10_tau = c.g20_tau = value;
        } else if (axis == "g10_tau") {
            c.g10_tau = value;
        } else if (axis == "g20_tau") {
            c.g20_tau = value;
        } else if (axis == "delta_tau") {
            c.delta_tau = value;
        } else if (axis == "t_sep_over_tau") {
            c.t_sep_over_tau = value;
        } else if (axis == "t_freeze_over_tau") {
            c.t_freeze_over_tau = value;
        } else if (axis == "steps") {
            assign_integer_field(c.steps, axis, value);
        } else if (axis == "n_photons") {
            assign_integer_field(c.n_photons, axis, value);
        } else if (axis == "mu") {
            assign_integer_field(c.mu, axis, value);
        } else {
            assign_integer_field(c.atoms, axis, value);
        }

        const ScenarioResult result = run_scenario(c);
        std::vector<double> row{value};
        if (base.propagating()) {
            row.insert(row.end(),
                       {result.report.fidelity, result.report.max_norm_drift,
                        result.report.charge_drift, result.report.min_gap_tau,
                        result.report.min_gap_active_tau, result.report.field_purity});
        } else {
            if (table.columns.size() == 1) {
                for (const auto& [label, _] : result.report.branch_probabilities) {
                    table.columns.push_back("p_" + label);
                }
            }
            for (const auto& [_, p] : result.report.branch_probabilities) row.push_back(p);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_sweep_csv(const SweepTable& table, const std::filesystem::path& file) {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file);
    if (!out) throw Error("cannot open " + file.string() + " for writing");
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format_csv_value(row[i]);
        }
        out << '\n';
    }
}

}  // namespace bimodal
