#ifndef BIMODAL_DYNAMICS_HPP
#define BIMODAL_DYNAMICS_HPP

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bimodal/model.hpp"

namespace bimodal {

// Complex amplitudes aligned with the sector ordering, tagged with the
// time they belong to.
struct StateVector {
    Eigen::VectorXcd amplitudes;
    double t = 0.0;
};

struct TimeGrid {
    double t_start = 0.0;
    double t_end = 0.0;
    int steps = 1;
};

struct Trajectory {
    std::vector<StateVector> points;
    // |norm - 1| at each recorded point, before any renormalization.
    std::vector<double> norm_drift;
    double max_norm_drift = 0.0;
};

// Fixed-step RK4 integration of i dpsi/dt = H(t) psi. Every record_every-th
// step (plus the final one) is recorded; a recorded copy is renormalized
// only when its drift exceeds 1e-9, and the drift is always reported.
// Throws NumericalError when the drift exceeds 1e-6.
Trajectory propagate(const ModelConfig& config, const StateVector& psi0, const TimeGrid& grid,
                     int record_every = 1);

// |amplitude|^2 per basis state; sums to the squared norm.
std::vector<std::pair<BasisState, double>> populations(const StateVector& psi,
                                                       const Sector& sector);
Eigen::VectorXd population_vector(const StateVector& psi);

}  // namespace bimodal

#endif
