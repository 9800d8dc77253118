#ifndef BIMODAL_METRICS_HPP
#define BIMODAL_METRICS_HPP

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bimodal/dark_state.hpp"
#include "bimodal/dynamics.hpp"
#include "bimodal/measurement.hpp"

namespace bimodal {

using DensityMatrix = Eigen::MatrixXcd;

// |<a|b>|^2; insensitive to the global phase of either argument.
double fidelity(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);
double fidelity(const StateVector& a, const StateVector& b);

namespace targets {

// The single-excitation transfer endpoint: (1/sqrt(N)) sum of the
// single-f kets, with the field in |0, mu+1>. For N = 2 this is the EPR
// pair (|g,f> + |f,g>)/sqrt(2) times the field ket; for N >= 3 the W
// state. Requires a sector built from |g..g; 1, mu>.
StateVector w_state(const Sector& sector);
inline StateVector epr_pair(const Sector& sector) { return w_state(sector); }

// Atom-field entangled targets on a post-measurement basis, normalized by
// sqrt(alpha^2 + gamma^2) and sqrt(beta^2 + gamma^2) respectively: the
// branch obtained when the measured atom is found in |g> pairs alpha with
// gamma, the |f> branch pairs beta with gamma.
Eigen::VectorXcd ghz_equivalent_prime(const DarkStateCoefficients& c, int n, int mu,
                                      const ReducedBasis& basis);
Eigen::VectorXcd ghz_equivalent_double_prime(const DarkStateCoefficients& c, int n, int mu,
                                             const ReducedBasis& basis);

// Two-qutrit field states (alpha|n,mu> + beta|n-2,mu+2> +- 2 gamma
// |n-1,mu+1>) / sqrt(alpha^2 + beta^2 + 4 gamma^2) on a field-only basis.
Eigen::VectorXcd qutrit_state(const DarkStateCoefficients& c, Sign sign, int n, int mu,
                              const ReducedBasis& basis);

}  // namespace targets

// Reduced density matrix over the kept atoms (each a three-level system);
// basis index is the base-3 expansion of the kept levels in (g, e, f)
// order, first kept atom most significant.
DensityMatrix reduced_atoms(const StateVector& psi, const Sector& sector,
                            const std::vector<int>& keep);

struct FieldReduction {
    DensityMatrix rho;
    std::vector<std::pair<int, int>> kets;  // (n_a, n_b), ascending
};
FieldReduction reduced_field(const StateVector& psi, const Sector& sector);

// Two-atom state restricted to the {g, f} qubit subspace (basis gg, gf,
// fg, ff) and renormalized; the discarded excited-level weight is reported
// separately.
struct QubitPairReduction {
    Eigen::Matrix4cd rho;
    double excited_leakage = 0.0;
};
QubitPairReduction reduced_qubit_pair(const StateVector& psi, const Sector& sector, int atom_i,
                                      int atom_j);

double purity(const DensityMatrix& rho);

// Throws BasisMismatchError if rho is not Hermitian/unit-trace/PSD within tol.
void validate_density_matrix(const DensityMatrix& rho, double tol = 1e-9);

// Wootters spin-flip concurrence of a two-qubit density matrix.
double concurrence(const Eigen::Matrix4cd& rho);

}  // namespace bimodal

#endif
