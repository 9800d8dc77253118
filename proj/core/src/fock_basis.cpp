#include "bimodal/fock_basis.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "bimodal/errors.hpp"

namespace bimodal {

char level_char(AtomLevel level) {
    switch (level) {
        case AtomLevel::G: return 'g';
        case AtomLevel::E: return 'e';
        case AtomLevel::F: return 'f';
    }
    return '?';
}

int BasisState::count_level(AtomLevel level) const {
    return static_cast<int>(std::count(atoms.begin(), atoms.end(), level));
}

Charges conserved_charges(const BasisState& state) {
    const long ne = state.count_level(AtomLevel::E);
    const long nf = state.count_level(AtomLevel::F);
    return Charges{state.n_a + ne + nf, state.n_b - nf};
}

std::string ket_label(const BasisState& state) {
    std::string out;
    for (std::size_t k = 0; k < state.atoms.size(); ++k) {
        out += level_char(state.atoms[k]);
        out += static_cast<char>('A' + k);
        out += '.';
    }
    out += "na" + std::to_string(state.n_a);
    out += ".nb" + std::to_string(state.n_b);
    return out;
}

std::optional<std::size_t> Sector::find(const BasisState& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t Sector::index_of(const BasisState& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) {
        throw BasisMismatchError("basis state " + ket_label(s) + " is not in the sector");
    }
    return it->second;
}

namespace {

// Every single application of a coupling term to `s`, photon numbers kept
// non-negative by construction.
void for_each_neighbor(const BasisState& s, auto&& visit) {
    for (std::size_t k = 0; k < s.atoms.size(); ++k) {
        BasisState t = s;
        switch (s.atoms[k]) {
            case AtomLevel::G:
                if (s.n_a >= 1) {
                    t.atoms[k] = AtomLevel::E;
                    t.n_a = s.n_a - 1;
                    visit(t);
                }
                break;
            case AtomLevel::F:
                if (s.n_b >= 1) {
                    t.atoms[k] = AtomLevel::E;
                    t.n_b = s.n_b - 1;
                    visit(t);
                }
                break;
            case AtomLevel::E:
                t.atoms[k] = AtomLevel::G;
                t.n_a = s.n_a + 1;
                visit(t);
                t = s;
                t.atoms[k] = AtomLevel::F;
                t.n_b = s.n_b + 1;
                visit(t);
                break;
        }
    }
}

}  // namespace

Sector build_sector(const BasisState& initial, std::size_t capacity) {
    if (initial.n_a < 0 || initial.n_b < 0) {
        throw ConfigError("initial state must have non-negative photon numbers");
    }
    if (initial.atoms.empty()) {
        throw ConfigError("initial state must contain at least one atom");
    }

    std::set<BasisState> seen{initial};
    std::deque<BasisState> queue{initial};
    while (!queue.empty()) {
        const BasisState s = queue.front();
        queue.pop_front();
        for_each_neighbor(s, [&](const BasisState& t) {
            if (seen.insert(t).second) {
                if (seen.size() > capacity) {
                    throw CapacityError("sector exceeds capacity of " + std::to_string(capacity) +
                                        " states; raise the cap or reduce N / photon numbers");
                }
                queue.push_back(t);
            }
        });
    }

    Sector sector;
    sector.states_.assign(seen.begin(), seen.end());  // std::set iterates in canonical order
    for (std::size_t i = 0; i < sector.states_.size(); ++i) {
        sector.index_.emplace(sector.states_[i], i);
    }
    sector.charges_ = conserved_charges(initial);
    sector.atom_count_ = static_cast<int>(initial.atoms.size());
    return sector;
}

}  // namespace bimodal
