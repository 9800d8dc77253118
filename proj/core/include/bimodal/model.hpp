#ifndef BIMODAL_MODEL_HPP
#define BIMODAL_MODEL_HPP

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bimodal/fock_basis.hpp"

namespace bimodal {

// Gaussian STIRAP pulse pair in counterintuitive order: the Stokes pulse
// g2 (f<->e leg) is centered at t = 0 and the pump pulse g1 (g<->e leg)
// at t = separation. Amplitudes are in units of 1/tau, hbar = 1.
struct PulseSchedule {
    double g10 = 0.0;
    double g20 = 0.0;
    double tau = 1.0;
    double separation = 0.0;
    // Optional per-atom multipliers (s1_k, s2_k); empty means all ones.
    std::vector<std::pair<double, double>> per_atom_scale;

    void validate(int atom_count) const;
};

// Coupling values per atom at a fixed time.
struct CouplingValues {
    std::vector<double> g1;
    std::vector<double> g2;
};

// g2_k(t) = s2_k * g20 * exp(-t^2/tau^2), g1_k(t) = s1_k * g10 * exp(-(t-T)^2/tau^2)
CouplingValues coupling_at(const PulseSchedule& schedule, int atom_count, double t);

struct ModelConfig {
    double delta = 0.0;  // one-photon detuning, units of 1/tau
    PulseSchedule schedule;
    Sector sector;
};

// Interaction-picture Hamiltonian on the sector: delta on the diagonal per
// atom in |e>, g1_k*sqrt(n_a) on the a-mode legs, g2_k*sqrt(n_b+1) on the
// b-mode legs, plus Hermitian conjugates. Couplings are real, so the matrix
// is real symmetric; storage stays complex to keep the propagator general.
Eigen::MatrixXcd hamiltonian_static(const Sector& sector, double delta,
                                    const CouplingValues& couplings);

Eigen::MatrixXcd hamiltonian_at(const ModelConfig& config, double t);

// In-place variant for the propagation hot loop; H must be presized.
void hamiltonian_at_into(const ModelConfig& config, double t, Eigen::MatrixXcd& H);

// Diagonal of the charge operator (k_a or k_b) in sector ordering. Within
// one sector these are constant by construction; exposed for the
// conservation checks.
Eigen::VectorXd charge_diagonal_a(const Sector& sector);
Eigen::VectorXd charge_diagonal_b(const Sector& sector);

}  // namespace bimodal

#endif
