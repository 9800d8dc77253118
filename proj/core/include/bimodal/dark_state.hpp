#ifndef BIMODAL_DARK_STATE_HPP
#define BIMODAL_DARK_STATE_HPP

#include <vector>

#include <Eigen/Dense>

#include "bimodal/dynamics.hpp"
#include "bimodal/model.hpp"

namespace bimodal {

// Closed-form coefficients of the two-atom dark state for symmetric
// couplings (g1 equal on both atoms, g2 equal on both atoms):
//   alpha = g2^2 sqrt((mu+1)(mu+2)),  on |g,g; n, mu>
//   beta  = g1^2 sqrt(n(n-1)),        on |f,f; n-2, mu+2>
//   gamma = -g1 g2 sqrt(n(mu+2)),     on each of |g,f>, |f,g>; n-1, mu+1
//   norm  = sqrt(alpha^2 + beta^2 + 2 gamma^2)
struct DarkStateCoefficients {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double norm = 0.0;
};

DarkStateCoefficients symmetric_dark_coefficients(double g1, double g2, int n, int mu);

// Multiplies the vector by a global phase so its largest-magnitude
// component becomes real and positive (first such component on ties).
void apply_phase_convention(Eigen::VectorXcd& v);

// The two-atom zero-energy eigenstate for general couplings, embedded in
// the given sector (built from |g,g; n, mu>). Components on absent kets
// vanish identically (n = 1 kills the beta leg). Throws UndefinedStateError
// when every coefficient is zero.
StateVector dark_state_closed_form_2atom(double g1A, double g1B, double g2A, double g2B, int n,
                                         int mu, const Sector& sector);

// Orthonormal basis of the |eigenvalue| < rel_tol * ||H|| eigenspace of the
// Hamiltonian, each vector in the phase convention above. Empty if there is
// no null vector; the whole space if H vanishes.
std::vector<StateVector> dark_states_numeric(const Sector& sector, double delta,
                                             const CouplingValues& couplings,
                                             double rel_tol = 1e-10);
std::vector<StateVector> dark_states_numeric(const ModelConfig& config, double t,
                                             double rel_tol = 1e-10);

// Basis of the lambda-dark subspace: states annihilated by H *and* free of
// any excited-level amplitude. This is the adiabatically followed branch;
// unlike the raw null space it stays one-dimensional at zero detuning,
// where symmetric couplings make the full null space degenerate. Computed
// as the kernel of the coupling block out of the e-free subspace, so it is
// independent of delta.
std::vector<StateVector> lambda_dark_states(const Sector& sector, const CouplingValues& couplings,
                                            double rel_tol = 1e-10);

// State after a sudden pulse turn-off at t_freeze: the lambda-dark state
// with couplings evaluated at t_freeze. Throws DegenerateDarkStateError
// unless that subspace is exactly one-dimensional.
StateVector freeze_state(const ModelConfig& config, double t_freeze);

}  // namespace bimodal

#endif
