#include "bimodal/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <string>

#include "bimodal/errors.hpp"

namespace bimodal {

double fidelity(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    if (a.size() != b.size()) {
        throw BasisMismatchError("fidelity of states with dimensions " + std::to_string(a.size()) +
                                 " and " + std::to_string(b.size()));
    }
    return std::norm(a.dot(b));
}

double fidelity(const StateVector& a, const StateVector& b) {
    return fidelity(a.amplitudes, b.amplitudes);
}

namespace targets {

StateVector w_state(const Sector& sector) {
    if (sector.charges().k_a != 1) {
        throw BasisMismatchError("the W target needs a single-excitation sector (k_a = 1)");
    }
    const int mu = static_cast<int>(sector.charges().k_b);
    const int atoms = sector.atom_count();

    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(sector.size()));
    const double amp = 1.0 / std::sqrt(static_cast<double>(atoms));
    for (int k = 0; k < atoms; ++k) {
        BasisState ket;
        ket.atoms.assign(atoms, AtomLevel::G);
        ket.atoms[k] = AtomLevel::F;
        ket.n_a = 0;
        ket.n_b = mu + 1;
        v(static_cast<Eigen::Index>(sector.index_of(ket))) = amp;
    }
    return StateVector{std::move(v), 0.0};
}

namespace {

Eigen::VectorXcd two_component_target(const ReducedBasis& basis, const ReducedKet& k1, double c1,
                                      const ReducedKet& k2, double c2) {
    const double norm = std::sqrt(c1 * c1 + c2 * c2);
    if (norm == 0.0) throw UndefinedStateError("both target components vanish");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.kets.size()));
    if (c1 != 0.0) v(static_cast<Eigen::Index>(basis.index_of(k1))) = c1 / norm;
    if (c2 != 0.0) v(static_cast<Eigen::Index>(basis.index_of(k2))) = c2 / norm;
    return v;
}

ReducedKet uniform_atom_ket(const ReducedBasis& basis, AtomLevel level, int n_a, int n_b) {
    ReducedKet ket;
    ket.atoms.assign(basis.kept_atoms.size(), level);
    ket.n_a = n_a;
    ket.n_b = n_b;
    return ket;
}

}  // namespace

Eigen::VectorXcd ghz_equivalent_prime(const DarkStateCoefficients& c, int n, int mu,
                                      const ReducedBasis& basis) {
    const int m = static_cast<int>(basis.kept_atoms.size());
    return two_component_target(basis, uniform_atom_ket(basis, AtomLevel::G, n, mu), c.alpha,
                                uniform_atom_ket(basis, AtomLevel::F, n - m, mu + m), c.gamma);
}

Eigen::VectorXcd ghz_equivalent_double_prime(const DarkStateCoefficients& c, int n, int mu,
                                             const ReducedBasis& basis) {
    const int m = static_cast<int>(basis.kept_atoms.size());
    return two_component_target(basis, uniform_atom_ket(basis, AtomLevel::F, n - m - 1, mu + m + 1),
                                c.beta, uniform_atom_ket(basis, AtomLevel::G, n - 1, mu + 1),
                                c.gamma);
}

Eigen::VectorXcd qutrit_state(const DarkStateCoefficients& c, Sign sign, int n, int mu,
                              const ReducedBasis& basis) {
    if (!basis.kept_atoms.empty() || !basis.field_kept) {
        throw BasisMismatchError("qutrit targets live on a field-only basis");
    }
    const double s = sign == Sign::Plus ? 1.0 : -1.0;
    const double norm =
        std::sqrt(c.alpha * c.alpha + c.beta * c.beta + 4.0 * c.gamma * c.gamma);
    if (norm == 0.0) throw UndefinedStateError("all qutrit components vanish");

    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.kets.size()));
    auto set = [&](int na, int nb, double value) {
        if (value == 0.0) return;
        v(static_cast<Eigen::Index>(basis.index_of(ReducedKet{{}, na, nb}))) = value / norm;
    };
    set(n, mu, c.alpha);
    if (n >= 2) set(n - 2, mu + 2, c.beta);
    set(n - 1, mu + 1, 2.0 * s * c.gamma);
    return v;
}

}  // namespace targets

namespace {

// Groups sector states by the configuration of the traced-out subsystems
// and accumulates the outer products of the kept-part amplitudes.
template <typename KeptKey>
DensityMatrix accumulate_reduction(const StateVector& psi, const Sector& sector, int dim,
                                   auto&& traced_key, KeptKey&& kept_index) {
    if (psi.amplitudes.size() != static_cast<Eigen::Index>(sector.size())) {
        throw BasisMismatchError("state dimension does not match sector size");
    }
    std::map<std::vector<int>, std::vector<std::pair<int, Eigen::Index>>> groups;
    for (std::size_t i = 0; i < sector.size(); ++i) {
        groups[traced_key(sector.state(i))].push_back(
            {kept_index(sector.state(i)), static_cast<Eigen::Index>(i)});
    }
    DensityMatrix rho = DensityMatrix::Zero(dim, dim);
    for (const auto& [key, members] : groups) {
        for (const auto& [ri, ii] : members) {
            for (const auto& [rj, jj] : members) {
                rho(ri, rj) += psi.amplitudes(ii) * std::conj(psi.amplitudes(jj));
            }
        }
    }
    return rho;
}

}  // namespace

DensityMatrix reduced_atoms(const StateVector& psi, const Sector& sector,
                            const std::vector<int>& keep) {
    const int atoms = sector.atom_count();
    std::vector<bool> kept(atoms, false);
    for (int k : keep) {
        if (k < 0 || k >= atoms) throw BasisMismatchError("kept atom index out of range");
        if (kept[k]) throw BasisMismatchError("kept atom listed twice");
        kept[k] = true;
    }
    int dim = 1;
    for (std::size_t i = 0; i < keep.size(); ++i) dim *= 3;

    return accumulate_reduction(
        psi, sector, dim,
        [&](const BasisState& s) {
            std::vector<int> key{s.n_a, s.n_b};
            for (int k = 0; k < atoms; ++k) {
                if (!kept[k]) key.push_back(static_cast<int>(s.atoms[k]));
            }
            return key;
        },
        [&](const BasisState& s) {
            int idx = 0;
            for (int k : keep) idx = idx * 3 + static_cast<int>(s.atoms[k]);
            return idx;
        });
}

FieldReduction reduced_field(const StateVector& psi, const Sector& sector) {
    std::map<std::pair<int, int>, int> field_index;
    for (const BasisState& s : sector.states()) {
        field_index.emplace(std::make_pair(s.n_a, s.n_b), 0);
    }
    FieldReduction out;
    int next = 0;
    for (auto& [ket, idx] : field_index) {
        idx = next++;
        out.kets.push_back(ket);
    }

    out.rho = accumulate_reduction(
        psi, sector, next,
        [&](const BasisState& s) {
            std::vector<int> key;
            key.reserve(s.atoms.size());
            for (AtomLevel a : s.atoms) key.push_back(static_cast<int>(a));
            return key;
        },
        [&](const BasisState& s) { return field_index.at({s.n_a, s.n_b}); });
    return out;
}

QubitPairReduction reduced_qubit_pair(const StateVector& psi, const Sector& sector, int atom_i,
                                      int atom_j) {
    if (atom_i == atom_j) throw BasisMismatchError("qubit pair needs two distinct atoms");
    const DensityMatrix rho9 = reduced_atoms(psi, sector, {atom_i, atom_j});

    // Rows/columns of the {g, f} block inside the 3x3 (x) 3x3 layout.
    const int g = static_cast<int>(AtomLevel::G);
    const int f = static_cast<int>(AtomLevel::F);
    const int pick[4] = {g * 3 + g, g * 3 + f, f * 3 + g, f * 3 + f};

    QubitPairReduction out;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) out.rho(r, c) = rho9(pick[r], pick[c]);
    }
    const double weight = out.rho.trace().real();
    out.excited_leakage = 1.0 - weight;
    if (weight <= 0.0) throw BasisMismatchError("state has no weight in the qubit subspace");
    out.rho /= weight;
    return out;
}

double purity(const DensityMatrix& rho) {
    return (rho * rho).trace().real();
}

void validate_density_matrix(const DensityMatrix& rho, double tol) {
    if (rho.rows() != rho.cols()) throw BasisMismatchError("density matrix must be square");
    if ((rho - rho.adjoint()).norm() > tol) {
        throw BasisMismatchError("density matrix is not Hermitian");
    }
    if (std::abs(rho.trace().real() - 1.0) > tol) {
        throw BasisMismatchError("density matrix trace differs from one");
    }
    Eigen::SelfAdjointEigenSolver<DensityMatrix> eig(rho);
    if (eig.eigenvalues().minCoeff() < -tol) {
        throw BasisMismatchError("density matrix has a negative eigenvalue beyond tolerance");
    }
}

double concurrence(const Eigen::Matrix4cd& rho) {
    validate_density_matrix(rho);

    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;

    const Eigen::Matrix4cd R = rho * yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> eig(R);

    std::array<double, 4> lambda{};
    for (int i = 0; i < 4; ++i) {
        lambda[i] = std::sqrt(std::max(0.0, eig.eigenvalues()(i).real()));
    }
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

}  // namespace bimodal
