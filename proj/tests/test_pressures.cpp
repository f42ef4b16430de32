#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "casimir/pressures.hpp"

using namespace casimir;
using namespace casimir::pressures;
using Catch::Matchers::WithinRel;

TEST_CASE("ball surface stress") {
    BallScenario s{1e-10, 0.01, 1e-19};
    double p = ball_surface_stress(s);
    CHECK_THAT(p, WithinRel(-2.34e10, 5e-3));

    s.epsilon_minus_1 = 0.0;
    CHECK(ball_surface_stress(s) == 0.0);

    s.epsilon_minus_1 = 0.01;
    s.tau = 0.0;
    CHECK_THROWS_AS(ball_surface_stress(s), std::domain_error);
}

TEST_CASE("ball cutoff stress and the algebraic remainder") {
    BallScenario s{1e-10, 0.01, 1e-19};
    CHECK_THAT(ball_cutoff_stress(s), WithinRel(-2.33e10, 5e-3));
    CHECK(ball_cutoff_stress(BallScenario{1e-10, 0.0, 1e-19}) == 0.0);

    // total minus cutoff leaves the finite -(eps-1)^2 hbar c / (1024 pi a^4)
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> ue(1e-4, 0.1), ua(-12, -6), ut(-21, -17);
    for (int i = 0; i < 200; ++i) {
        BallScenario t{std::pow(10.0, ua(rng)), ue(rng), std::pow(10.0, ut(rng))};
        double remainder = -t.epsilon_minus_1 * t.epsilon_minus_1 * units::hbar_c /
                           (1024.0 * pi * std::pow(t.radius_a, 4));
        // the subtraction cancels up to ~16/delta^3 of the magnitude, so allow
        // a few ulps of the larger term on top of the relative tolerance
        double diff = ball_surface_stress(t) - ball_cutoff_stress(t);
        double slack = 1e-9 * std::fabs(remainder) +
                       16.0 * std::numeric_limits<double>::epsilon() *
                           std::fabs(ball_cutoff_stress(t));
        CHECK(std::fabs(diff - remainder) <= slack);
        // both attractive, total at least as strong as the cutoff part
        // (up to rounding of the much larger common 16/delta^3 term)
        CHECK(ball_surface_stress(t) <=
              ball_cutoff_stress(t) +
                  4.0 * std::numeric_limits<double>::epsilon() *
                      std::fabs(ball_cutoff_stress(t)));
        CHECK(ball_cutoff_stress(t) <= 0.0);
    }
}

TEST_CASE("cutoff fraction vanishes as delta grows") {
    // for delta -> infinity the cutoff term 16/delta^3 is negligible in the bracket
    BallScenario s{1e-10, 0.01, 1e-19};
    double frac_small_delta = ball_cutoff_stress(s) / ball_surface_stress(s);
    s.tau = 1e-15; // delta ~ 3000
    double frac_large_delta = ball_cutoff_stress(s) / ball_surface_stress(s);
    CHECK(frac_small_delta > 0.9);
    CHECK(frac_large_delta < 1e-6);
}

TEST_CASE("isorefractive surface pressure") {
    CHECK(isorefractive_surface_pressure(1.0, 1e-6) == 0.0);
    CHECK_THAT(isorefractive_surface_pressure(2.0, 1e-6), WithinRel(1.38e-5, 5e-3));
    CHECK(isorefractive_surface_pressure(2.0, 1e-6) ==
          isorefractive_surface_pressure(0.5, 1e-6));
    CHECK_THROWS_AS(isorefractive_surface_pressure(0.0, 1e-6), std::domain_error);
    CHECK_THROWS_AS(isorefractive_surface_pressure(2.0, 0.0), std::domain_error);
}

TEST_CASE("reciprocal symmetry is exact") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(std::log(0.1), 0.0);
    for (int i = 0; i < 1000; ++i) {
        double mu = std::exp(u(rng)); // (0.1, 1]; the pair covers [0.1, 10]
        CHECK(isorefractive_surface_pressure(mu, 1e-6) ==
              isorefractive_surface_pressure(1.0 / mu, 1e-6));
    }
}

TEST_CASE("cone force, dilute limit") {
    CHECK(cone_force_dilute(1e-3, 1e-2, 1.0) == 0.0);
    CHECK_THAT(cone_force_dilute(1e-3, 1e-2, 1.01), WithinRel(2.93e-27, 5e-3));
    CHECK_THROWS_AS(cone_force_dilute(1e-2, 1e-3, 1.01), std::domain_error);

    // comparison with the exact surface-pressure sum a^2 P(a) + b^2 P(b):
    // the dilute form drops the 0.311-bracket, a < 9% effect at |mu-1| = 0.01
    double a = 1e-3, b = 1e-2, mu = 1.01;
    double exact = a * a * isorefractive_surface_pressure(mu, a) +
                   b * b * isorefractive_surface_pressure(mu, b);
    double dilute = cone_force_dilute(a, b, mu);
    CHECK(std::fabs(exact - dilute) / exact < 0.09);
}

TEST_CASE("hole pressure constant") {
    CHECK_THAT(hole_pressure_constant_unity(), WithinRel(2.92e-27, 1e-3));
    CHECK(hole_pressure_constant(1.0) == 0.0);

    // C/(8 pi R^4) reconstructs the isorefractive pressure for all R
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> umu(std::log(0.1), std::log(10.0)),
        ur(std::log(1e-9), std::log(1e-2));
    for (int i = 0; i < 500; ++i) {
        double mu = std::exp(umu(rng));
        double r = std::exp(ur(rng));
        double c = hole_pressure_constant(mu);
        CHECK_THAT(hole_surface_pressure(c, r),
                   WithinRel(isorefractive_surface_pressure(mu, r), 1e-14));
    }
}

TEST_CASE("hole surface pressure") {
    CHECK(hole_surface_pressure(0.0, 1e-3) == 0.0);
    CHECK_THAT(hole_surface_pressure(2.92e-27, 1e-3), WithinRel(1.162e-16, 1e-3));
    double p = hole_surface_pressure(2.92e-27, 1e-3);
    CHECK(hole_surface_pressure(2.92e-27, 0.5e-3) == 16.0 * p); // exact power-of-two scaling
    CHECK_THROWS_AS(hole_surface_pressure(2.92e-27, 0.0), std::domain_error);
}

TEST_CASE("hole pressure is monotone decreasing in R") {
    double prev = hole_surface_pressure(2.92e-27, 1e-9);
    for (double r = 2e-9; r < 1.0; r *= 2.0) {
        double cur = hole_surface_pressure(2.92e-27, r);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("clausius-mossotti density derivative") {
    CHECK(clausius_mossotti_density_derivative(1.0) == 0.0);
    CHECK_THAT(clausius_mossotti_density_derivative(2.0), WithinRel(4.0 / 3.0, 1e-15));
    CHECK_THROWS_AS(clausius_mossotti_density_derivative(0.99), std::domain_error);
    // dilute expansion: (eps-1)(1 + (eps-1)/3) to first order
    double e = 1e-4;
    CHECK_THAT(clausius_mossotti_density_derivative(1.0 + e), WithinRel(e * (1.0 + e / 3.0), 1e-10));
}
