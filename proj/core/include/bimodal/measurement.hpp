#ifndef BIMODAL_MEASUREMENT_HPP
#define BIMODAL_MEASUREMENT_HPP

#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "bimodal/dynamics.hpp"
#include "bimodal/fock_basis.hpp"

namespace bimodal {

enum class Sign : int { Plus = +1, Minus = -1 };

inline char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

// Projection onto one joint Fock state |n_a, n_b> of both modes.
struct FieldNumberProjector {
    int n_a = 0;
    int n_b = 0;
    bool operator==(const FieldNumberProjector&) const = default;
};

// Projection of one atom onto |g> or |f> (|e> never survives a dark state,
// so it is not a supported selection).
struct AtomLevelProjector {
    int atom = 0;
    AtomLevel level = AtomLevel::G;
    bool operator==(const AtomLevelProjector&) const = default;
};

// Projection of one atom onto (|g> + sign|f>)/sqrt(2).
struct AtomSuperpositionProjector {
    int atom = 0;
    Sign sign = Sign::Plus;
    bool operator==(const AtomSuperpositionProjector&) const = default;
};

using Projector =
    std::variant<FieldNumberProjector, AtomLevelProjector, AtomSuperpositionProjector>;

// Basis ket of the subsystems that survive a measurement: the levels of the
// kept atoms plus, when the field was not measured away, its photon numbers.
struct ReducedKet {
    std::vector<AtomLevel> atoms;
    int n_a = -1;
    int n_b = -1;

    bool has_field() const { return n_a >= 0; }
    bool operator==(const ReducedKet&) const = default;
};

// Kets are ordered lexicographically on (atoms, -n_a, n_b) so that the
// field components of GHZ-equivalent and qutrit states read off in the
// conventional (|n,mu>, |n-1,mu+1>, ...) order.
bool reduced_ket_less(const ReducedKet& a, const ReducedKet& b);

struct ReducedBasis {
    std::vector<int> kept_atoms;  // original atom indices, ascending
    bool field_kept = true;
    std::vector<ReducedKet> kets;

    // Index of a ket, or throws BasisMismatchError.
    std::size_t index_of(const ReducedKet& ket) const;
};

std::string ket_label(const ReducedKet& ket, const ReducedBasis& basis);

struct MeasurementOutcome {
    double probability = 0.0;
    ReducedBasis basis;
    Eigen::VectorXcd post_state;  // normalized, on `basis`
};

// Projection postulate: probability = ||P psi||^2, post state renormalized
// and re-expressed on the basis of the unmeasured subsystems. Throws
// ImpossibleOutcomeError below probability 1e-14.
MeasurementOutcome project(const StateVector& psi, const Sector& sector, const Projector& proj);

// Sequential projection of several commuting projectors (distinct
// subsystems); the probability is the joint one.
MeasurementOutcome project_sequence(const StateVector& psi, const Sector& sector,
                                    const std::vector<Projector>& projectors);

// Both atoms of a two-atom state measured in the superposition basis; the
// post state lives on the two-mode field alone, ordered
// (|n,mu>, |n-1,mu+1>, |n-2,mu+2>) for a sector built from |g,g;n,mu>.
MeasurementOutcome project_qutrit(const StateVector& psi, const Sector& sector, Sign sign_a,
                                  Sign sign_b);

// Probabilities of a complete orthogonal set of outcomes (each outcome a
// projector list as in project_sequence). Validates that all outcomes
// measure the same subsystems, are pairwise orthogonal, and that the
// probabilities sum to one.
std::vector<double> outcome_distribution(const StateVector& psi, const Sector& sector,
                                         const std::vector<std::vector<Projector>>& outcomes);
std::vector<double> outcome_distribution(const StateVector& psi, const Sector& sector,
                                         const std::vector<Projector>& basis);

}  // namespace bimodal

#endif
