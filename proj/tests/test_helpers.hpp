#ifndef BIMODAL_TEST_HELPERS_HPP
#define BIMODAL_TEST_HELPERS_HPP

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bimodal/dark_state.hpp"
#include "bimodal/fock_basis.hpp"
#include "bimodal/model.hpp"

namespace bimodal::test {

// "gf", 1, 1 -> |g,f; 1,1>
inline BasisState ket(const std::string& levels, int n_a, int n_b) {
    BasisState s;
    for (char c : levels) {
        switch (c) {
            case 'g': s.atoms.push_back(AtomLevel::G); break;
            case 'e': s.atoms.push_back(AtomLevel::E); break;
            case 'f': s.atoms.push_back(AtomLevel::F); break;
        }
    }
    s.n_a = n_a;
    s.n_b = n_b;
    return s;
}

inline CouplingValues uniform_couplings(int atoms, double g1, double g2) {
    return CouplingValues{std::vector<double>(atoms, g1), std::vector<double>(atoms, g2)};
}

// Distance up to a global phase: || a - e^{i phi} b || with the optimal phi.
inline double phase_aligned_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    const std::complex<double> overlap = b.dot(a);
    if (std::abs(overlap) == 0.0) return std::sqrt(a.squaredNorm() + b.squaredNorm());
    return (a - (overlap / std::abs(overlap)) * b).norm();
}

// Independent oracle for the N-atom dark state with uniform couplings:
// amplitude of the j-atoms-in-f component obeys
//   c_{j+1} = -c_j * g1 sqrt(n - j) / (g2 sqrt(mu + j + 1)),
// which is forced by requiring every excited-state amplitude of H psi to
// cancel. Built directly on the recursion, independent of the SVD and
// eigensolver paths in the library.
inline Eigen::VectorXcd recursion_dark_state(const Sector& sector, int n, int mu, double g1,
                                             double g2) {
    const int atoms = sector.atom_count();
    std::vector<double> c(atoms + 1, 0.0);
    c[0] = 1.0;
    for (int j = 0; j < atoms; ++j) {
        if (n - j <= 0) break;  // photon ladder exhausted
        c[j + 1] = -c[j] * g1 * std::sqrt(static_cast<double>(n - j)) /
                   (g2 * std::sqrt(static_cast<double>(mu + j + 1)));
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(sector.size()));
    for (std::size_t i = 0; i < sector.size(); ++i) {
        const BasisState& s = sector.state(i);
        if (s.count_level(AtomLevel::E) != 0) continue;
        const int j = s.count_level(AtomLevel::F);
        if (s.n_a == n - j && s.n_b == mu + j) v(static_cast<Eigen::Index>(i)) = c[j];
    }
    v /= v.norm();
    apply_phase_convention(v);
    return v;
}

}  // namespace bimodal::test

#endif
