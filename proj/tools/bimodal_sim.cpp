// Command-line front end: named scenarios, flat INI config files mirroring
// the flags (flags win), CSV artifacts, and parameter sweeps.

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bimodal/errors.hpp"
#include "bimodal/scenario.hpp"

namespace {

struct CliOptions {
    std::string config_file;
    std::string scenario;
    std::optional<double> g10_tau, g20_tau, delta_tau, t_sep, t_freeze;
    std::optional<int> n_photons, mu, atoms, steps, record_every;
    std::string out_dir;
    bool emit_plot_script = false;

    std::string axis;
    std::vector<double> values;
};

void add_common_options(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--config", opt.config_file,
                    "Flat key=value file with the same keys as the long flags");
    cmd->add_option("--scenario", opt.scenario,
                    "Scenario name: epr2, w<N>, ghz_project, qutrit_project, custom");
    cmd->add_option("--g10-tau", opt.g10_tau, "Pump amplitude g10*tau [15]");
    cmd->add_option("--g20-tau", opt.g20_tau, "Stokes amplitude g20*tau [15]");
    cmd->add_option("--delta-tau", opt.delta_tau, "One-photon detuning delta*tau [0]");
    cmd->add_option("--t-sep", opt.t_sep, "Pulse separation T/tau [4/3]");
    cmd->add_option("--n-photons", opt.n_photons, "Initial a-mode photons n");
    cmd->add_option("--mu", opt.mu, "Initial b-mode photons mu [0]");
    cmd->add_option("--atoms", opt.atoms, "Atom count N");
    cmd->add_option("--steps", opt.steps, "RK4 step count [8000]");
    cmd->add_option("--t-freeze", opt.t_freeze,
                    "Freeze time t/tau for projection scenarios [T/2]");
    cmd->add_option("--record-every", opt.record_every, "Record every k-th step [auto]");
    cmd->add_option("--out", opt.out_dir, "Directory for CSV artifacts");
    cmd->add_flag("--emit-plot-script", opt.emit_plot_script,
                  "Write plot_trajectory.py next to the CSVs");
}

std::string trimmed(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

// Flat key=value config. Keys use the long flag spellings (dashes or
// underscores); values already set on the command line take precedence.
void apply_config_file(const std::string& path, CliOptions& opt) {
    std::ifstream in(path);
    if (!in) throw bimodal::ConfigError("config: cannot open '" + path + "'");

    auto parse_double = [](const std::string& key, const std::string& value, int line) {
        std::size_t used = 0;
        double out = 0.0;
        try {
            out = std::stod(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != value.size()) {
            throw bimodal::ConfigError("config line " + std::to_string(line) + ": " + key +
                                       " expects a number, got '" + value + "'");
        }
        return out;
    };
    auto parse_int = [&](const std::string& key, const std::string& value, int line) {
        const double v = parse_double(key, value, line);
        if (v != static_cast<int>(v)) {
            throw bimodal::ConfigError("config line " + std::to_string(line) + ": " + key +
                                       " expects an integer, got '" + value + "'");
        }
        return static_cast<int>(v);
    };

    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string text = trimmed(raw);
        if (text.empty() || text.front() == '#' || text.front() == ';') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw bimodal::ConfigError("config line " + std::to_string(line) +
                                       ": expected key=value, got '" + text + "'");
        }
        std::string key = trimmed(text.substr(0, eq));
        const std::string value = trimmed(text.substr(eq + 1));
        for (char& c : key) {
            if (c == '-') c = '_';
        }

        if (key == "scenario") {
            if (opt.scenario.empty()) opt.scenario = value;
        } else if (key == "g10_tau") {
            if (!opt.g10_tau) opt.g10_tau = parse_double(key, value, line);
        } else if (key == "g20_tau") {
            if (!opt.g20_tau) opt.g20_tau = parse_double(key, value, line);
        } else if (key == "delta_tau") {
            if (!opt.delta_tau) opt.delta_tau = parse_double(key, value, line);
        } else if (key == "t_sep") {
            if (!opt.t_sep) opt.t_sep = parse_double(key, value, line);
        } else if (key == "t_freeze") {
            if (!opt.t_freeze) opt.t_freeze = parse_double(key, value, line);
        } else if (key == "n_photons") {
            if (!opt.n_photons) opt.n_photons = parse_int(key, value, line);
        } else if (key == "mu") {
            if (!opt.mu) opt.mu = parse_int(key, value, line);
        } else if (key == "atoms") {
            if (!opt.atoms) opt.atoms = parse_int(key, value, line);
        } else if (key == "steps") {
            if (!opt.steps) opt.steps = parse_int(key, value, line);
        } else if (key == "record_every") {
            if (!opt.record_every) opt.record_every = parse_int(key, value, line);
        } else if (key == "out") {
            if (opt.out_dir.empty()) opt.out_dir = value;
        } else if (key == "emit_plot_script") {
            opt.emit_plot_script = opt.emit_plot_script || value == "true" || value == "1";
        } else {
            throw bimodal::ConfigError("config line " + std::to_string(line) +
                                       ": unknown field '" + key + "'");
        }
    }
}

bimodal::ScenarioConfig build_config(const CliOptions& opt) {
    if (opt.scenario.empty()) {
        throw bimodal::ConfigError("scenario: required (flag --scenario or config file)");
    }
    bimodal::ScenarioConfig c = bimodal::ScenarioConfig::from_name(opt.scenario);
    if (opt.atoms) {
        if (c.kind == bimodal::ScenarioKind::W && *opt.atoms != c.atoms) {
            throw bimodal::ConfigError("atoms: conflicts with the atom count in '" +
                                       opt.scenario + "'");
        }
        c.atoms = *opt.atoms;
    }
    if (opt.n_photons) c.n_photons = *opt.n_photons;
    if (opt.mu) c.mu = *opt.mu;
    if (opt.g10_tau) c.g10_tau = *opt.g10_tau;
    if (opt.g20_tau) c.g20_tau = *opt.g20_tau;
    if (opt.delta_tau) c.delta_tau = *opt.delta_tau;
    if (opt.t_sep) c.t_sep_over_tau = *opt.t_sep;
    if (opt.steps) c.steps = *opt.steps;
    if (opt.t_freeze) c.t_freeze_over_tau = *opt.t_freeze;
    if (opt.record_every) c.record_every = *opt.record_every;
    return c;
}

void print_report(const bimodal::ScenarioResult& result) {
    const bimodal::RunReport& r = result.report;
    std::printf("scenario            %s\n", r.scenario.c_str());
    if (result.config.propagating()) {
        std::printf("fidelity            %.12f\n", r.fidelity);
        std::printf("max norm drift      %.3e\n", r.max_norm_drift);
        std::printf("charge drift        %.3e\n", r.charge_drift);
        std::printf("min gap (tau^-1)    %.6e  (while pulses on: %.6e)\n", r.min_gap_tau,
                    r.min_gap_active_tau);
        std::printf("field purity        %.6f\n", r.field_purity);
    } else {
        std::printf("t_freeze / tau      %.6f\n", result.config.freeze_time());
    }
    std::printf("final populations:\n");
    for (const auto& [label, pop] : r.final_populations) {
        if (pop > 5e-7) std::printf("  %-24s %.6f\n", label.c_str(), pop);
    }
    for (const bimodal::BranchResult& branch : result.branches) {
        std::printf("branch %-6s  p = %.12f  post state:\n", branch.label.c_str(),
                    branch.probability);
        for (std::size_t i = 0; i < branch.basis.kets.size(); ++i) {
            const std::complex<double> amp = branch.post_state(static_cast<Eigen::Index>(i));
            std::printf("  %-24s %+.12f %+.12fi\n",
                        ket_label(branch.basis.kets[i], branch.basis).c_str(), amp.real(),
                        amp.imag());
        }
    }
    std::printf("runtime             %.3f s\n", r.runtime_seconds);
}

int run(const CLI::App& app, CliOptions& opt) {
    if (!opt.config_file.empty()) apply_config_file(opt.config_file, opt);

    const bool is_simulate = app.got_subcommand("simulate");
    const bool is_project = app.got_subcommand("project");
    const bool is_sweep = app.got_subcommand("sweep");

    bimodal::ScenarioConfig config = build_config(opt);
    if (is_simulate && !config.propagating()) {
        throw bimodal::ConfigError("scenario: '" + config.name() +
                                   "' is a projection scenario; use the project subcommand");
    }
    if (is_project && config.propagating()) {
        throw bimodal::ConfigError("scenario: '" + config.name() +
                                   "' propagates; use the simulate subcommand");
    }

    if (is_sweep) {
        const bimodal::SweepTable table = bimodal::sweep(config, opt.axis, opt.values);
        const std::filesystem::path out =
            opt.out_dir.empty() ? std::filesystem::path("sweep.csv")
                                : std::filesystem::path(opt.out_dir) / "sweep.csv";
        bimodal::write_sweep_csv(table, out);
        std::printf("wrote %s (%zu rows)\n", out.string().c_str(), table.rows.size());
        return 0;
    }

    const bimodal::ScenarioResult result = bimodal::run_scenario(config);
    print_report(result);
    if (!opt.out_dir.empty()) {
        bimodal::write_artifacts(result, opt.out_dir, opt.emit_plot_script);
        std::printf("artifacts in %s\n", opt.out_dir.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-mode cavity STIRAP entanglement simulator"};
    app.require_subcommand(1);

    CliOptions opt;
    CLI::App* simulate =
        app.add_subcommand("simulate", "Propagate a pulsed scenario and score the endpoint");
    add_common_options(simulate, opt);
    CLI::App* project = app.add_subcommand(
        "project", "Freeze the dark state and tabulate all measurement branches");
    add_common_options(project, opt);
    CLI::App* sw = app.add_subcommand("sweep", "Run a scenario across one parameter axis");
    add_common_options(sw, opt);
    sw->add_option("--axis", opt.axis, "Scenario field to sweep (e.g. g0_tau, delta_tau)")
        ->required();
    sw->add_option("--values", opt.values, "Comma-separated axis values")
        ->required()
        ->delimiter(',');

    try {
        app.parse(argc, argv);
        return run(app, opt);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const bimodal::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const bimodal::DegenerateDarkStateError& e) {
        std::cerr << "degenerate dark space: " << e.what() << '\n';
        return 4;
    } catch (const bimodal::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << '\n';
        return 1;
    }
}
