#include <catch2/catch_amalgamated.hpp>

#include "casimir/constants.hpp"

using namespace casimir;
using Catch::Matchers::WithinRel;

TEST_CASE("pinned constants") {
    CHECK(units::hbar == 1.054571817e-34);
    CHECK(units::c == 2.99792458e8);
    CHECK(units::G == 6.67430e-11);
    CHECK(units::hbar_c == units::hbar * units::c);
    CHECK(units::planck_area == units::hbar * units::G / (units::c * units::c * units::c));
}

TEST_CASE("mass_to_geometric") {
    CHECK_THAT(units::mass_to_geometric(1.0), WithinRel(7.4261e-28, 1e-4));
    CHECK_THAT(units::mass_to_geometric(1.98892e30), WithinRel(1476.6, 1e-3));
    CHECK_THROWS_AS(units::mass_to_geometric(0.0), std::domain_error);
    CHECK_THROWS_AS(units::mass_to_geometric(-1.0), std::domain_error);
    CHECK_THROWS_AS(units::mass_to_geometric(std::numeric_limits<double>::infinity()),
                    std::domain_error);
}

TEST_CASE("geometric round trip") {
    for (double m : {1.0, 1e-3, 5.9722e24, 1.98892e30}) {
        double back = units::geometric_to_mass(units::mass_to_geometric(m));
        CHECK_THAT(back, WithinRel(m, 1e-14));
    }
}

TEST_CASE("casimir constant in both unit systems") {
    CHECK_THAT(units::casimir_constant_geometric(), WithinRel(2.412e-71, 1e-3));
    CHECK(units::casimir_constant_geometric() / units::planck_area == 0.09235);
    // matches the 2-digit literature value 2.9e-27 J*m
    CHECK_THAT(units::casimir_constant_si(), WithinRel(2.9e-27, 1e-2));
    CHECK_THAT(units::casimir_constant_si(), WithinRel(2.92e-27, 1e-3));
}

TEST_CASE("constants are bit-stable across invocations") {
    double a1 = units::casimir_constant_geometric();
    double b1 = units::casimir_constant_si();
    double b2 = units::casimir_constant_si();
    double a2 = units::casimir_constant_geometric();
    CHECK(a1 == a2);
    CHECK(b1 == b2);
}
