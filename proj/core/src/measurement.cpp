#include "bimodal/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "bimodal/errors.hpp"

namespace bimodal {

namespace {

constexpr double kImpossibleProbability = 1e-14;
constexpr double kRoot2Inv = 0.70710678118654752440;

}  // namespace

bool reduced_ket_less(const ReducedKet& a, const ReducedKet& b) {
    if (a.atoms != b.atoms) return a.atoms < b.atoms;
    if (a.n_a != b.n_a) return a.n_a > b.n_a;  // descending photon number in mode a
    return a.n_b < b.n_b;
}

std::size_t ReducedBasis::index_of(const ReducedKet& ket) const {
    for (std::size_t i = 0; i < kets.size(); ++i) {
        if (kets[i] == ket) return i;
    }
    throw BasisMismatchError("ket is not in the reduced basis");
}

std::string ket_label(const ReducedKet& ket, const ReducedBasis& basis) {
    std::string out;
    for (std::size_t p = 0; p < ket.atoms.size(); ++p) {
        out += level_char(ket.atoms[p]);
        out += static_cast<char>('A' + basis.kept_atoms[p]);
        if (p + 1 < ket.atoms.size() || ket.has_field()) out += '.';
    }
    if (ket.has_field()) {
        out += "na" + std::to_string(ket.n_a) + ".nb" + std::to_string(ket.n_b);
    }
    return out;
}

namespace {

struct SubState {
    ReducedBasis basis;
    Eigen::VectorXcd amplitudes;
};

SubState from_sector(const StateVector& psi, const Sector& sector) {
    if (psi.amplitudes.size() != static_cast<Eigen::Index>(sector.size())) {
        throw BasisMismatchError("state dimension does not match sector size");
    }
    SubState s;
    s.basis.field_kept = true;
    for (int k = 0; k < sector.atom_count(); ++k) s.basis.kept_atoms.push_back(k);
    s.basis.kets.reserve(sector.size());
    for (const BasisState& b : sector.states()) {
        s.basis.kets.push_back(ReducedKet{b.atoms, b.n_a, b.n_b});
    }
    s.amplitudes = psi.amplitudes;
    return s;
}

int atom_position(const ReducedBasis& basis, int atom) {
    auto it = std::find(basis.kept_atoms.begin(), basis.kept_atoms.end(), atom);
    if (it == basis.kept_atoms.end()) {
        throw BasisMismatchError("atom " + std::to_string(atom) +
                                 " is not an unmeasured atom of this state");
    }
    return static_cast<int>(it - basis.kept_atoms.begin());
}

// One projection step. The resulting basis is derived from the source basis
// alone (not from which amplitudes happen to vanish), so branch tables over
// the same source basis share columns. Returns the branch probability;
// `out` is left unnormalized.
double apply_projector(const SubState& in, const Projector& proj, SubState& out) {
    std::map<ReducedKet, std::complex<double>, decltype(&reduced_ket_less)> acc(
        &reduced_ket_less);

    if (const auto* fp = std::get_if<FieldNumberProjector>(&proj)) {
        if (!in.basis.field_kept) throw BasisMismatchError("field was already measured");
        if (fp->n_a < 0 || fp->n_b < 0) throw ConfigError("field projector needs photon counts >= 0");
        out.basis.kept_atoms = in.basis.kept_atoms;
        out.basis.field_kept = false;
        for (std::size_t i = 0; i < in.basis.kets.size(); ++i) {
            const ReducedKet& k = in.basis.kets[i];
            if (k.n_a != fp->n_a || k.n_b != fp->n_b) continue;
            acc[ReducedKet{k.atoms, -1, -1}] += in.amplitudes(static_cast<Eigen::Index>(i));
        }
    } else if (const auto* ap = std::get_if<AtomLevelProjector>(&proj)) {
        if (ap->level == AtomLevel::E) {
            throw ConfigError("atom-level projections are restricted to |g> and |f>");
        }
        const int pos = atom_position(in.basis, ap->atom);
        out.basis.kept_atoms = in.basis.kept_atoms;
        out.basis.kept_atoms.erase(out.basis.kept_atoms.begin() + pos);
        out.basis.field_kept = in.basis.field_kept;
        for (std::size_t i = 0; i < in.basis.kets.size(); ++i) {
            const ReducedKet& k = in.basis.kets[i];
            if (k.atoms[pos] != ap->level) continue;
            ReducedKet r = k;
            r.atoms.erase(r.atoms.begin() + pos);
            acc[r] += in.amplitudes(static_cast<Eigen::Index>(i));
        }
    } else {
        const auto& sp = std::get<AtomSuperpositionProjector>(proj);
        const int pos = atom_position(in.basis, sp.atom);
        out.basis.kept_atoms = in.basis.kept_atoms;
        out.basis.kept_atoms.erase(out.basis.kept_atoms.begin() + pos);
        out.basis.field_kept = in.basis.field_kept;
        for (std::size_t i = 0; i < in.basis.kets.size(); ++i) {
            const ReducedKet& k = in.basis.kets[i];
            if (k.atoms[pos] == AtomLevel::E) continue;  // <g|e> = <f|e> = 0
            const double w =
                (k.atoms[pos] == AtomLevel::F && sp.sign == Sign::Minus) ? -kRoot2Inv : kRoot2Inv;
            ReducedKet r = k;
            r.atoms.erase(r.atoms.begin() + pos);
            acc[r] += w * in.amplitudes(static_cast<Eigen::Index>(i));
        }
    }

    out.basis.kets.clear();
    out.amplitudes.resize(static_cast<Eigen::Index>(acc.size()));
    Eigen::Index i = 0;
    double prob = 0.0;
    for (const auto& [ket, amp] : acc) {
        out.basis.kets.push_back(ket);
        out.amplitudes(i++) = amp;
        prob += std::norm(amp);
    }
    return prob;
}

MeasurementOutcome finalize(SubState&& s, double probability) {
    if (probability < kImpossibleProbability) {
        throw ImpossibleOutcomeError("projection probability " + std::to_string(probability) +
                                     " is below 1e-14");
    }
    MeasurementOutcome out;
    out.probability = probability;
    out.basis = std::move(s.basis);
    out.post_state = s.amplitudes / s.amplitudes.norm();
    return out;
}

// Joint probability of a projector sequence; final unnormalized state in `s`.
double run_sequence(SubState& s, const std::vector<Projector>& projectors) {
    double prob = 1.0;
    for (const Projector& p : projectors) {
        SubState next;
        const double norm_sq = apply_projector(s, p, next);
        // apply_projector keeps the unnormalized amplitudes, so norm_sq is
        // already the joint probability up to this step.
        prob = norm_sq;
        s = std::move(next);
        if (prob == 0.0) break;
    }
    return prob;
}

}  // namespace

MeasurementOutcome project(const StateVector& psi, const Sector& sector, const Projector& proj) {
    SubState s = from_sector(psi, sector);
    SubState next;
    const double prob = apply_projector(s, proj, next);
    return finalize(std::move(next), prob);
}

MeasurementOutcome project_sequence(const StateVector& psi, const Sector& sector,
                                    const std::vector<Projector>& projectors) {
    if (projectors.empty()) throw ConfigError("projector sequence must not be empty");
    SubState s = from_sector(psi, sector);
    const double prob = run_sequence(s, projectors);
    return finalize(std::move(s), prob);
}

MeasurementOutcome project_qutrit(const StateVector& psi, const Sector& sector, Sign sign_a,
                                  Sign sign_b) {
    if (sector.atom_count() != 2) {
        throw BasisMismatchError("qutrit projection requires a two-atom state");
    }
    return project_sequence(psi, sector,
                            {AtomSuperpositionProjector{0, sign_a},
                             AtomSuperpositionProjector{1, sign_b}});
}

namespace {

// Subsystem id: atom index, or -1 for the field.
int measured_subsystem(const Projector& p) {
    if (std::holds_alternative<FieldNumberProjector>(p)) return -1;
    if (const auto* ap = std::get_if<AtomLevelProjector>(&p)) return ap->atom;
    return std::get<AtomSuperpositionProjector>(p).atom;
}

bool orthogonal_on_subsystem(const Projector& a, const Projector& b) {
    if (a.index() != b.index()) return false;  // mixed bases never orthogonal here
    if (const auto* fa = std::get_if<FieldNumberProjector>(&a)) {
        const auto& fb = std::get<FieldNumberProjector>(b);
        return fa->n_a != fb.n_a || fa->n_b != fb.n_b;
    }
    if (const auto* la = std::get_if<AtomLevelProjector>(&a)) {
        return la->level != std::get<AtomLevelProjector>(b).level;
    }
    return std::get<AtomSuperpositionProjector>(a).sign !=
           std::get<AtomSuperpositionProjector>(b).sign;
}

}  // namespace

std::vector<double> outcome_distribution(const StateVector& psi, const Sector& sector,
                                         const std::vector<std::vector<Projector>>& outcomes) {
    if (outcomes.empty()) throw ConfigError("outcome basis must not be empty");

    // All outcomes must measure the same subsystems, each at most once.
    std::vector<std::map<int, Projector>> by_subsystem;
    for (const auto& outcome : outcomes) {
        std::map<int, Projector> m;
        for (const Projector& p : outcome) {
            if (!m.emplace(measured_subsystem(p), p).second) {
                throw ConfigError("outcome measures the same subsystem twice");
            }
        }
        if (!by_subsystem.empty()) {
            auto keys = [](const std::map<int, Projector>& mm) {
                std::set<int> k;
                for (const auto& [id, _] : mm) k.insert(id);
                return k;
            };
            if (keys(m) != keys(by_subsystem.front())) {
                throw ConfigError("outcomes measure different subsystems");
            }
        }
        by_subsystem.push_back(std::move(m));
    }

    for (std::size_t i = 0; i < by_subsystem.size(); ++i) {
        for (std::size_t j = i + 1; j < by_subsystem.size(); ++j) {
            bool orthogonal = false;
            bool identical = true;
            for (const auto& [id, pi] : by_subsystem[i]) {
                const Projector& pj = by_subsystem[j].at(id);
                if (orthogonal_on_subsystem(pi, pj)) {
                    orthogonal = true;
                } else if (pi.index() != pj.index()) {
                    throw ConfigError("outcomes mix projector bases on one subsystem");
                }
                if (!(pi == pj)) identical = false;
            }
            if (identical) throw ConfigError("duplicate outcome in basis");
            if (!orthogonal) throw ConfigError("outcomes are not mutually orthogonal");
        }
    }

    std::vector<double> probs;
    probs.reserve(outcomes.size());
    double total = 0.0;
    for (const auto& outcome : outcomes) {
        SubState s = from_sector(psi, sector);
        const double p = run_sequence(s, outcome);
        probs.push_back(p);
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw ConfigError("outcome basis is incomplete: probabilities sum to " +
                          std::to_string(total));
    }
    return probs;
}

std::vector<double> outcome_distribution(const StateVector& psi, const Sector& sector,
                                         const std::vector<Projector>& basis) {
    std::vector<std::vector<Projector>> outcomes;
    outcomes.reserve(basis.size());
    for (const Projector& p : basis) outcomes.push_back({p});
    return outcome_distribution(psi, sector, outcomes);
}

}  // namespace bimodal
