#include "bimodal/model.hpp"

#include <cmath>

#include "bimodal/errors.hpp"

namespace bimodal {

void PulseSchedule::validate(int atom_count) const {
    if (!(tau > 0.0)) throw ConfigError("pulse width tau must be positive");
    if (g10 < 0.0 || g20 < 0.0) throw ConfigError("pulse amplitudes must be non-negative");
    if (!std::isfinite(g10) || !std::isfinite(g20) || !std::isfinite(separation)) {
        throw ConfigError("pulse parameters must be finite");
    }
    if (!per_atom_scale.empty() &&
        per_atom_scale.size() != static_cast<std::size_t>(atom_count)) {
        throw ConfigError("per_atom_scale must list one (s1, s2) pair per atom");
    }
}

CouplingValues coupling_at(const PulseSchedule& schedule, int atom_count, double t) {
    schedule.validate(atom_count);
    const double stokes = schedule.g20 * std::exp(-(t * t) / (schedule.tau * schedule.tau));
    const double dt = t - schedule.separation;
    const double pump = schedule.g10 * std::exp(-(dt * dt) / (schedule.tau * schedule.tau));

    CouplingValues out;
    out.g1.resize(atom_count, pump);
    out.g2.resize(atom_count, stokes);
    if (!schedule.per_atom_scale.empty()) {
        for (int k = 0; k < atom_count; ++k) {
            out.g1[k] *= schedule.per_atom_scale[k].first;
            out.g2[k] *= schedule.per_atom_scale[k].second;
        }
    }
    return out;
}

namespace {

void fill_hamiltonian(const Sector& sector, double delta, const CouplingValues& couplings,
                      Eigen::MatrixXcd& H) {
    const auto dim = static_cast<Eigen::Index>(sector.size());
    const int atoms = sector.atom_count();
    if (couplings.g1.size() != static_cast<std::size_t>(atoms) ||
        couplings.g2.size() != static_cast<std::size_t>(atoms)) {
        throw ConfigError("coupling vectors do not match the sector's atom count");
    }
    H.setZero(dim, dim);

    for (Eigen::Index i = 0; i < dim; ++i) {
        const BasisState& s = sector.state(i);
        const int ne = s.count_level(AtomLevel::E);
        if (ne > 0) H(i, i) = delta * ne;

        // Each coupled pair is visited once, from its g- or f-side member.
        for (int k = 0; k < atoms; ++k) {
            BasisState t = s;
            if (s.atoms[k] == AtomLevel::G && s.n_a >= 1) {
                t.atoms[k] = AtomLevel::E;
                t.n_a = s.n_a - 1;
                const auto j = static_cast<Eigen::Index>(sector.index_of(t));
                const double v = couplings.g1[k] * std::sqrt(static_cast<double>(s.n_a));
                H(j, i) += v;
                H(i, j) += v;
            } else if (s.atoms[k] == AtomLevel::F && s.n_b >= 1) {
                t.atoms[k] = AtomLevel::E;
                t.n_b = s.n_b - 1;
                const auto j = static_cast<Eigen::Index>(sector.index_of(t));
                const double v = couplings.g2[k] * std::sqrt(static_cast<double>(s.n_b));
                H(j, i) += v;
                H(i, j) += v;
            }
        }
    }
}

}  // namespace

Eigen::MatrixXcd hamiltonian_static(const Sector& sector, double delta,
                                    const CouplingValues& couplings) {
    Eigen::MatrixXcd H;
    fill_hamiltonian(sector, delta, couplings, H);
    return H;
}

Eigen::MatrixXcd hamiltonian_at(const ModelConfig& config, double t) {
    return hamiltonian_static(config.sector, config.delta,
                              coupling_at(config.schedule, config.sector.atom_count(), t));
}

void hamiltonian_at_into(const ModelConfig& config, double t, Eigen::MatrixXcd& H) {
    fill_hamiltonian(config.sector, config.delta,
                     coupling_at(config.schedule, config.sector.atom_count(), t), H);
}

Eigen::VectorXd charge_diagonal_a(const Sector& sector) {
    Eigen::VectorXd d(static_cast<Eigen::Index>(sector.size()));
    for (std::size_t i = 0; i < sector.size(); ++i) {
        d(static_cast<Eigen::Index>(i)) =
            static_cast<double>(conserved_charges(sector.state(i)).k_a);
    }
    return d;
}

Eigen::VectorXd charge_diagonal_b(const Sector& sector) {
    Eigen::VectorXd d(static_cast<Eigen::Index>(sector.size()));
    for (std::size_t i = 0; i < sector.size(); ++i) {
        d(static_cast<Eigen::Index>(i)) =
            static_cast<double>(conserved_charges(sector.state(i)).k_b);
    }
    return d;
}

}  // namespace bimodal
