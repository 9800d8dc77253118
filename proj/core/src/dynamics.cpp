#include "bimodal/dynamics.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "bimodal/errors.hpp"

namespace bimodal {

namespace {

constexpr double kRenormalizeDrift = 1e-9;
constexpr double kFailDrift = 1e-6;

void record(Trajectory& out, const Eigen::VectorXcd& psi, double t) {
    const double drift = std::abs(psi.norm() - 1.0);
    out.norm_drift.push_back(drift);
    out.max_norm_drift = std::max(out.max_norm_drift, drift);
    if (drift > kFailDrift) {
        throw NumericalError("norm drift " + std::to_string(drift) + " at t = " +
                             std::to_string(t) + " exceeds 1e-6; increase the step count");
    }
    StateVector point{psi, t};
    if (drift > kRenormalizeDrift) point.amplitudes /= psi.norm();
    out.points.push_back(std::move(point));
}

}  // namespace

Trajectory propagate(const ModelConfig& config, const StateVector& psi0, const TimeGrid& grid,
                     int record_every) {
    const auto dim = static_cast<Eigen::Index>(config.sector.size());
    if (psi0.amplitudes.size() != dim) {
        throw BasisMismatchError("initial state dimension " +
                                 std::to_string(psi0.amplitudes.size()) +
                                 " does not match sector size " + std::to_string(dim));
    }
    if (std::abs(psi0.amplitudes.norm() - 1.0) > 1e-9) {
        throw ConfigError("initial state must be normalized");
    }
    if (!(grid.t_start < grid.t_end)) throw ConfigError("time grid requires t_start < t_end");
    if (grid.steps < 1) throw ConfigError("time grid requires at least one step");
    if (record_every < 1) throw ConfigError("record_every must be >= 1");

    const double h = (grid.t_end - grid.t_start) / grid.steps;
    const std::complex<double> minus_i(0.0, -1.0);

    Eigen::VectorXcd psi = psi0.amplitudes;
    Eigen::MatrixXcd H(dim, dim);
    Eigen::VectorXcd k1(dim), k2(dim), k3(dim), k4(dim);

    Trajectory out;
    record(out, psi, grid.t_start);

    for (int step = 0; step < grid.steps; ++step) {
        const double t = grid.t_start + step * h;

        hamiltonian_at_into(config, t, H);
        k1 = minus_i * (H * psi);
        hamiltonian_at_into(config, t + 0.5 * h, H);
        k2 = minus_i * (H * (psi + 0.5 * h * k1));
        k3 = minus_i * (H * (psi + 0.5 * h * k2));
        hamiltonian_at_into(config, t + h, H);
        k4 = minus_i * (H * (psi + h * k3));
        psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        const bool last = step + 1 == grid.steps;
        if (last || (step + 1) % record_every == 0) {
            record(out, psi, grid.t_start + (step + 1) * h);
        }
    }
    return out;
}

std::vector<std::pair<BasisState, double>> populations(const StateVector& psi,
                                                       const Sector& sector) {
    if (psi.amplitudes.size() != static_cast<Eigen::Index>(sector.size())) {
        throw BasisMismatchError("state dimension does not match sector size");
    }
    std::vector<std::pair<BasisState, double>> out;
    out.reserve(sector.size());
    for (std::size_t i = 0; i < sector.size(); ++i) {
        out.emplace_back(sector.state(i), std::norm(psi.amplitudes(static_cast<Eigen::Index>(i))));
    }
    return out;
}

Eigen::VectorXd population_vector(const StateVector& psi) {
    return psi.amplitudes.cwiseAbs2();
}

}  // namespace bimodal
