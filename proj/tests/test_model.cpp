#include <cmath>
#include <random>

#include <doctest.h>

#include "bimodal/errors.hpp"
#include "bimodal/model.hpp"
#include "test_helpers.hpp"

using namespace bimodal;
using test::ket;
using test::uniform_couplings;

TEST_SUITE_BEGIN("model");

namespace {

PulseSchedule fig_schedule() {
    PulseSchedule s;
    s.g10 = 15.0;
    s.g20 = 15.0;
    s.tau = 1.0;
    s.separation = 4.0 / 3.0;
    return s;
}

}  // namespace

TEST_CASE("pulse values at the centers and tails") {
    const PulseSchedule s = fig_schedule();

    const CouplingValues at0 = coupling_at(s, 2, 0.0);
    CHECK(at0.g2[0] == 15.0);  // Stokes peak, exact
    CHECK(at0.g1[0] == doctest::Approx(15.0 * std::exp(-16.0 / 9.0)).epsilon(1e-14));

    const CouplingValues atT = coupling_at(s, 2, s.separation);
    CHECK(atT.g1[1] == 15.0);  // pump peak, exact
    CHECK(atT.g2[1] == doctest::Approx(15.0 * std::exp(-16.0 / 9.0)).epsilon(1e-14));
    CHECK(atT.g2[1] == doctest::Approx(2.538).epsilon(1e-3));

    for (double t : {-50.0, 50.0}) {
        const CouplingValues far = coupling_at(s, 2, t);
        CHECK(far.g1[0] == 0.0);
        CHECK(far.g2[0] == 0.0);
    }
}

TEST_CASE("per-atom scaling multiplies each leg") {
    PulseSchedule s = fig_schedule();
    s.per_atom_scale = {{0.5, 2.0}, {1.0, 1.0}};
    const CouplingValues g = coupling_at(s, 2, 0.0);
    const CouplingValues base = coupling_at(fig_schedule(), 2, 0.0);
    CHECK(g.g1[0] == doctest::Approx(0.5 * base.g1[0]).epsilon(1e-15));
    CHECK(g.g2[0] == doctest::Approx(2.0 * base.g2[0]).epsilon(1e-15));
    CHECK(g.g1[1] == base.g1[1]);
    CHECK(g.g2[1] == base.g2[1]);
}

TEST_CASE("schedule validation") {
    PulseSchedule s = fig_schedule();
    s.tau = 0.0;
    CHECK_THROWS_AS((void)coupling_at(s, 2, 0.0), ConfigError);
    s = fig_schedule();
    s.per_atom_scale = {{1.0, 1.0}};
    CHECK_THROWS_AS((void)coupling_at(s, 2, 0.0), ConfigError);
    s = fig_schedule();
    s.g10 = -1.0;
    CHECK_THROWS_AS((void)coupling_at(s, 2, 0.0), ConfigError);
}

TEST_CASE("no couplings and no detuning give the zero matrix") {
    const Sector sector = build_sector(ket("gg", 1, 0));
    const Eigen::MatrixXcd H = hamiltonian_static(sector, 0.0, uniform_couplings(2, 0.0, 0.0));
    CHECK(H.norm() == 0.0);
}

TEST_CASE("single matrix elements carry the bosonic factors") {
    const double g = 3.2;

    SUBCASE("a-mode leg from one photon") {
        const Sector sector = build_sector(ket("gg", 1, 0));
        const Eigen::MatrixXcd H = hamiltonian_static(sector, 0.0, uniform_couplings(2, g, g));
        const auto i = sector.index_of(ket("gg", 1, 0));
        const auto j = sector.index_of(ket("ge", 0, 0));
        CHECK(H(j, i).real() == doctest::Approx(g).epsilon(1e-15));
    }
    SUBCASE("b-mode creation on the empty mode") {
        const Sector sector = build_sector(ket("gg", 2, 0));
        const double g2 = 1.7;
        const Eigen::MatrixXcd H = hamiltonian_static(sector, 0.0, uniform_couplings(2, g, g2));
        const auto i = sector.index_of(ket("ge", 1, 0));
        const auto j = sector.index_of(ket("gf", 1, 1));
        CHECK(H(j, i).real() == doctest::Approx(g2).epsilon(1e-15));
    }
}

TEST_CASE("detuning sits on the diagonal, once per excited atom") {
    const Sector sector = build_sector(ket("gg", 2, 0));
    const double delta = 4.5;
    const Eigen::MatrixXcd H = hamiltonian_static(sector, delta, uniform_couplings(2, 1.0, 1.0));
    CHECK(H(sector.index_of(ket("gg", 2, 0)), sector.index_of(ket("gg", 2, 0))).real() == 0.0);
    CHECK(H(sector.index_of(ket("ge", 1, 0)), sector.index_of(ket("ge", 1, 0))).real() == delta);
    CHECK(H(sector.index_of(ket("ee", 0, 0)), sector.index_of(ket("ee", 0, 0))).real() ==
          2 * delta);
}

TEST_CASE("Hermitian at every evaluation time") {
    const Sector sector = build_sector(ket("gg", 3, 1));
    ModelConfig config{2.5, fig_schedule(), sector};
    config.schedule.per_atom_scale = {{1.0, 0.8}, {1.3, 1.0}};
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> time_dist(-5.0, 7.0);
    for (int i = 0; i < 25; ++i) {
        const Eigen::MatrixXcd H = hamiltonian_at(config, time_dist(rng));
        const double scale = std::max(H.norm(), 1e-300);
        CHECK((H - H.adjoint()).norm() / scale <= 1e-12);
    }
}

TEST_CASE("commutes with both charge operators") {
    const Sector sector = build_sector(ket("ggg", 2, 1));
    const Eigen::MatrixXcd H = hamiltonian_static(sector, 3.0, uniform_couplings(3, 2.0, 0.7));
    for (const Eigen::VectorXd& k : {charge_diagonal_a(sector), charge_diagonal_b(sector)}) {
        const Eigen::MatrixXcd K = k.cast<std::complex<double>>().asDiagonal();
        CHECK((H * K - K * H).norm() <= 1e-12 * H.norm() * (1.0 + k.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("off-diagonal magnitudes match a combinatorial re-derivation") {
    // Every nonzero off-diagonal element must be g1_k sqrt(n_a) or
    // g2_k sqrt(n_b) for the unique atom k whose level differs.
    const Sector sector = build_sector(ket("gg", 3, 1));
    const CouplingValues g{{2.0, 0.9}, {1.1, 3.0}};
    const Eigen::MatrixXcd H = hamiltonian_static(sector, 0.0, g);

    int checked = 0;
    for (std::size_t i = 0; i < sector.size(); ++i) {
        for (std::size_t j = 0; j < sector.size(); ++j) {
            if (i == j || H(j, i) == std::complex<double>(0.0)) continue;
            const BasisState& a = sector.state(i);
            const BasisState& b = sector.state(j);
            int atom = -1;
            for (int k = 0; k < sector.atom_count(); ++k) {
                if (a.atoms[k] != b.atoms[k]) {
                    CHECK(atom == -1);  // exactly one atom may differ
                    atom = k;
                }
            }
            REQUIRE(atom >= 0);
            const BasisState& gs = a.atoms[atom] == AtomLevel::E ? b : a;
            double expected = 0.0;
            if (gs.atoms[atom] == AtomLevel::G) {
                expected = g.g1[atom] * std::sqrt(static_cast<double>(gs.n_a));
            } else {
                expected = g.g2[atom] * std::sqrt(static_cast<double>(gs.n_b));
            }
            CHECK(std::abs(H(j, i)) == doctest::Approx(expected).epsilon(1e-13));
            ++checked;
        }
    }
    CHECK(checked > 20);
}

TEST_CASE("per-atom scales reproduce the general per-atom coupling matrix") {
    const Sector sector = build_sector(ket("gg", 2, 1));
    ModelConfig config;
    config.delta = 1.5;
    config.schedule = fig_schedule();
    config.schedule.per_atom_scale = {{0.7, 1.9}, {1.2, 0.4}};
    config.sector = sector;

    const double t = 0.37;
    const CouplingValues base = coupling_at(fig_schedule(), 2, t);
    const CouplingValues scaled{{0.7 * base.g1[0], 1.2 * base.g1[1]},
                                {1.9 * base.g2[0], 0.4 * base.g2[1]}};
    const Eigen::MatrixXcd direct = hamiltonian_static(sector, config.delta, scaled);
    CHECK((hamiltonian_at(config, t) - direct).norm() <= 1e-14 * direct.norm());
}

TEST_CASE("coupling count must match the sector") {
    const Sector sector = build_sector(ket("gg", 1, 0));
    CHECK_THROWS_AS((void)hamiltonian_static(sector, 0.0, uniform_couplings(3, 1.0, 1.0)),
                    ConfigError);
}

TEST_SUITE_END();
