#ifndef BIMODAL_FOCK_BASIS_HPP
#define BIMODAL_FOCK_BASIS_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bimodal {

// Levels of the lambda configuration. The order G < E < F is fixed; it
// defines the canonical basis ordering everywhere else.
enum class AtomLevel : std::uint8_t { G = 0, E = 1, F = 2 };

char level_char(AtomLevel level);

// One occupation-number ket: the level of each atom plus the photon
// numbers of the two cavity modes (a couples g<->e, b couples f<->e).
struct BasisState {
    std::vector<AtomLevel> atoms;
    int n_a = 0;
    int n_b = 0;

    auto operator<=>(const BasisState&) const = default;

    int count_level(AtomLevel level) const;
};

// Charges conserved by the interaction: k_a = n_a + N_e + N_f counts the
// a-photons plus every atom that has absorbed one; k_b = n_b - N_f counts
// b-photons net of the atoms that have emitted one.
struct Charges {
    long k_a = 0;
    long k_b = 0;
    bool operator==(const Charges&) const = default;
};

Charges conserved_charges(const BasisState& state);

// Stable text label, e.g. "gA.fB.na0.nb1". Used for CSV headers.
std::string ket_label(const BasisState& state);

// The set of basis states reachable from an initial ket under the
// coupling terms, closed by breadth-first search and canonically ordered
// (lexicographic on (atoms, n_a, n_b)). Immutable after construction and
// safe for concurrent shared reads.
class Sector {
public:
    std::size_t size() const { return states_.size(); }
    const std::vector<BasisState>& states() const { return states_; }
    const BasisState& state(std::size_t i) const { return states_[i]; }
    int atom_count() const { return atom_count_; }
    Charges charges() const { return charges_; }

    std::optional<std::size_t> find(const BasisState& s) const;
    // Throws BasisMismatchError if the ket is not a member.
    std::size_t index_of(const BasisState& s) const;

private:
    friend Sector build_sector(const BasisState&, std::size_t);

    std::vector<BasisState> states_;
    std::map<BasisState, std::size_t> index_;
    Charges charges_;
    int atom_count_ = 0;
};

// Breadth-first closure over the coupling moves (g<->e exchanging an
// a-photon, f<->e exchanging a b-photon) starting from `initial`.
// Throws CapacityError once more than `capacity` states are discovered.
Sector build_sector(const BasisState& initial, std::size_t capacity = 100000);

}  // namespace bimodal

#endif
