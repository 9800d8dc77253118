#include <doctest.h>

#include "bimodal/errors.hpp"
#include "bimodal/fock_basis.hpp"
#include "test_helpers.hpp"

using namespace bimodal;
using test::ket;

TEST_SUITE_BEGIN("fock_basis");

TEST_CASE("conserved charges read off occupations") {
    CHECK(conserved_charges(ket("gg", 1, 0)) == Charges{1, 0});
    CHECK(conserved_charges(ket("gf", 0, 1)) == Charges{1, 0});
    CHECK(conserved_charges(ket("ee", 0, 0)) == Charges{2, 0});
    CHECK(conserved_charges(ket("gef", 2, 3)) == Charges{4, 2});
}

TEST_CASE("two atoms with two photons close onto the nine coupled kets") {
    const Sector sector = build_sector(ket("gg", 2, 0));
    const std::vector<BasisState> expected = {
        ket("gg", 2, 0), ket("ge", 1, 0), ket("gf", 1, 1),
        ket("eg", 1, 0), ket("ee", 0, 0), ket("ef", 0, 1),
        ket("fg", 1, 1), ket("fe", 0, 1), ket("ff", 0, 2),
    };
    REQUIRE(sector.size() == 9);
    // canonical order is lexicographic on (atoms, n_a, n_b) with g < e < f
    std::vector<BasisState> sorted = expected;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sector.states() == sorted);
}

TEST_CASE("a single photon cannot reach the two-excitation kets") {
    const Sector sector = build_sector(ket("gg", 1, 0));
    REQUIRE(sector.size() == 5);
    for (const auto& s : {ket("gg", 1, 0), ket("ge", 0, 0), ket("eg", 0, 0), ket("gf", 0, 1),
                          ket("fg", 0, 1)}) {
        CHECK(sector.find(s).has_value());
    }
}

TEST_CASE("three atoms, one photon") {
    const Sector sector = build_sector(ket("ggg", 1, 0));
    REQUIRE(sector.size() == 7);
    CHECK(sector.find(ket("ggg", 1, 0)).has_value());
    int single_e = 0, single_f = 0;
    for (const BasisState& s : sector.states()) {
        if (s.count_level(AtomLevel::E) == 1) {
            CHECK(s.n_a == 0);
            CHECK(s.n_b == 0);
            ++single_e;
        }
        if (s.count_level(AtomLevel::F) == 1) {
            CHECK(s.n_a == 0);
            CHECK(s.n_b == 1);
            ++single_f;
        }
    }
    CHECK(single_e == 3);
    CHECK(single_f == 3);
}

TEST_CASE("every member carries the sector charges and non-negative photons") {
    for (const auto& initial : {ket("gg", 3, 1), ket("ggg", 2, 0), ket("g", 4, 2)}) {
        const Sector sector = build_sector(initial);
        for (const BasisState& s : sector.states()) {
            CHECK(conserved_charges(s) == sector.charges());
            CHECK(s.n_a >= 0);
            CHECK(s.n_b >= 0);
        }
    }
}

TEST_CASE("building from any member reproduces the identical sector") {
    const Sector sector = build_sector(ket("gg", 2, 1));
    for (const BasisState& member : sector.states()) {
        const Sector rebuilt = build_sector(member);
        CHECK(rebuilt.states() == sector.states());
        CHECK(rebuilt.charges() == sector.charges());
    }
}

TEST_CASE("index map is the inverse of the state list") {
    const Sector sector = build_sector(ket("ggg", 2, 1));
    for (std::size_t i = 0; i < sector.size(); ++i) {
        CHECK(sector.index_of(sector.state(i)) == i);
    }
    CHECK(!sector.find(ket("ggg", 5, 0)).has_value());
    CHECK_THROWS_AS((void)sector.index_of(ket("ggg", 5, 0)), BasisMismatchError);
}

TEST_CASE("capacity cap fails loudly") {
    CHECK_THROWS_AS((void)build_sector(ket("gg", 2, 0), 5), CapacityError);
}

TEST_CASE("invalid initial states are rejected") {
    CHECK_THROWS_AS((void)build_sector(ket("gg", -1, 0)), ConfigError);
    CHECK_THROWS_AS((void)build_sector(BasisState{{}, 1, 0}), ConfigError);
}

TEST_CASE("ket labels") {
    CHECK(ket_label(ket("gf", 0, 1)) == "gA.fB.na0.nb1");
    CHECK(ket_label(ket("gge", 3, 2)) == "gA.gB.eC.na3.nb2");
}

TEST_SUITE_END();
