#include "bimodal/dark_state.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "bimodal/errors.hpp"

namespace bimodal {

DarkStateCoefficients symmetric_dark_coefficients(double g1, double g2, int n, int mu) {
    if (n < 1 || mu < 0) throw ConfigError("dark-state coefficients need n >= 1, mu >= 0");
    DarkStateCoefficients c;
    c.alpha = g2 * g2 * std::sqrt(static_cast<double>(mu + 1) * (mu + 2));
    c.beta = g1 * g1 * std::sqrt(static_cast<double>(n) * (n - 1));
    c.gamma = -g1 * g2 * std::sqrt(static_cast<double>(n) * (mu + 2));
    c.norm = std::sqrt(c.alpha * c.alpha + c.beta * c.beta + 2.0 * c.gamma * c.gamma);
    return c;
}

void apply_phase_convention(Eigen::VectorXcd& v) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double m = std::abs(v(i));
        if (m > best) {
            best = m;
            imax = i;
        }
    }
    if (best <= 0.0) return;
    const std::complex<double> phase = v(imax) / best;
    v /= phase;
}

StateVector dark_state_closed_form_2atom(double g1A, double g1B, double g2A, double g2B, int n,
                                         int mu, const Sector& sector) {
    if (sector.atom_count() != 2) {
        throw BasisMismatchError("closed-form dark state is defined for two atoms");
    }
    if (n < 1) throw ConfigError("closed-form dark state needs n >= 1");

    const double root_n_mu2 = std::sqrt(static_cast<double>(n) * (mu + 2));
    struct Component {
        BasisState ket;
        double value;
    };
    using enum AtomLevel;
    const Component components[] = {
        {{{G, G}, n, mu}, g2A * g2B * std::sqrt(static_cast<double>(mu + 1) * (mu + 2))},
        {{{F, F}, n - 2, mu + 2}, g1A * g1B * std::sqrt(static_cast<double>(n) * (n - 1))},
        {{{G, F}, n - 1, mu + 1}, -g1B * g2A * root_n_mu2},
        {{{F, G}, n - 1, mu + 1}, -g1A * g2B * root_n_mu2},
    };

    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(sector.size()));
    double norm_sq = 0.0;
    for (const auto& [ket, value] : components) {
        if (value == 0.0) continue;  // the n = 1 beta leg has no ket in the sector
        v(static_cast<Eigen::Index>(sector.index_of(ket))) = value;
        norm_sq += value * value;
    }
    if (norm_sq == 0.0) {
        throw UndefinedStateError("all dark-state coefficients vanish for these couplings");
    }
    v /= std::sqrt(norm_sq);
    return StateVector{std::move(v), 0.0};
}

std::vector<StateVector> dark_states_numeric(const Sector& sector, double delta,
                                             const CouplingValues& couplings, double rel_tol) {
    if (!(rel_tol > 0.0)) throw ConfigError("dark-state tolerance must be positive");
    const Eigen::MatrixXcd H = hamiltonian_static(sector, delta, couplings);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(H);
    const Eigen::VectorXd& w = eig.eigenvalues();
    const double scale = w.cwiseAbs().maxCoeff();

    std::vector<StateVector> out;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (std::abs(w(i)) < rel_tol * scale || scale == 0.0) {
            Eigen::VectorXcd v = eig.eigenvectors().col(i);
            apply_phase_convention(v);
            out.push_back(StateVector{std::move(v), 0.0});
        }
    }
    return out;
}

std::vector<StateVector> dark_states_numeric(const ModelConfig& config, double t,
                                             double rel_tol) {
    return dark_states_numeric(config.sector, config.delta,
                               coupling_at(config.schedule, config.sector.atom_count(), t),
                               rel_tol);
}

std::vector<StateVector> lambda_dark_states(const Sector& sector, const CouplingValues& couplings,
                                            double rel_tol) {
    if (!(rel_tol > 0.0)) throw ConfigError("dark-state tolerance must be positive");
    const auto dim = static_cast<Eigen::Index>(sector.size());

    std::vector<Eigen::Index> e_free;
    std::vector<Eigen::Index> e_carrying;
    for (Eigen::Index i = 0; i < dim; ++i) {
        if (sector.state(i).count_level(AtomLevel::E) == 0) {
            e_free.push_back(i);
        } else {
            e_carrying.push_back(i);
        }
    }

    // H maps e-free states only into e-carrying ones, so a state supported
    // on the e-free block is annihilated by H exactly when it lies in the
    // kernel of that coupling block. Detuning never enters.
    const Eigen::MatrixXcd H = hamiltonian_static(sector, 0.0, couplings);
    Eigen::MatrixXd C(static_cast<Eigen::Index>(e_carrying.size()),
                      static_cast<Eigen::Index>(e_free.size()));
    for (std::size_t r = 0; r < e_carrying.size(); ++r) {
        for (std::size_t c = 0; c < e_free.size(); ++c) {
            C(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                H(e_carrying[r], e_free[c]).real();
        }
    }

    std::vector<StateVector> out;
    auto push_full = [&](const Eigen::VectorXd& reduced) {
        Eigen::VectorXcd full = Eigen::VectorXcd::Zero(dim);
        for (std::size_t c = 0; c < e_free.size(); ++c) {
            full(e_free[c]) = reduced(static_cast<Eigen::Index>(c));
        }
        apply_phase_convention(full);
        out.push_back(StateVector{std::move(full), 0.0});
    };

    if (e_carrying.empty()) {
        for (std::size_t c = 0; c < e_free.size(); ++c) {
            push_full(Eigen::VectorXd::Unit(static_cast<Eigen::Index>(e_free.size()),
                                            static_cast<Eigen::Index>(c)));
        }
        return out;
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(C, Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    const auto cols = static_cast<Eigen::Index>(e_free.size());
    for (Eigen::Index i = 0; i < cols; ++i) {
        const double s = i < sv.size() ? sv(i) : 0.0;
        if (s < rel_tol * smax || smax == 0.0) push_full(svd.matrixV().col(i));
    }
    return out;
}

StateVector freeze_state(const ModelConfig& config, double t_freeze) {
    auto dark = lambda_dark_states(
        config.sector, coupling_at(config.schedule, config.sector.atom_count(), t_freeze));
    if (dark.empty()) {
        throw DegenerateDarkStateError("no dark state at t_freeze = " + std::to_string(t_freeze));
    }
    if (dark.size() > 1) {
        throw DegenerateDarkStateError("dark subspace at t_freeze = " + std::to_string(t_freeze) +
                                       " has dimension " + std::to_string(dark.size()));
    }
    dark.front().t = t_freeze;
    return std::move(dark.front());
}

}  // namespace bimodal
