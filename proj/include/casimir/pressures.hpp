#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "casimir/constants.hpp"

// Closed-form Casimir pressure and force expressions: the dilute-ball
// surface stress and its cutoff part, the isorefractive-sphere surface
// pressure, the dilute annulus cone force, the hole-pressure constant, and
// the Clausius-Mossotti density derivative. All functions are pure.

namespace casimir::pressures {

inline constexpr double pi = std::numbers::pi;

/// Dilute dielectric ball probed with a time-splitting cutoff tau.
struct BallScenario {
    double radius_a = 0.0;        // m
    double epsilon_minus_1 = 0.0; // diluteness parameter, |eps-1| <= 0.1
    double tau = 0.0;             // s

    void validate() const {
        if (!(radius_a > 0.0)) throw std::domain_error("BallScenario: radius must be positive");
        if (!(tau > 0.0)) throw std::domain_error("BallScenario: tau must be positive (cutoff divergence at 0)");
        if (!(std::fabs(epsilon_minus_1) <= 0.1))
            throw std::domain_error("BallScenario: |eps-1| must be <= 0.1 (dilute regime)");
    }
    /// Soft diluteness check; formulas stay evaluable but lose accuracy.
    bool dilute_warning() const { return std::fabs(epsilon_minus_1) > 0.05; }
};

/// Isorefractive (eps*mu = 1) fluid annulus between radii a and b.
struct AnnulusScenario {
    double inner_a = 0.0; // m
    double outer_b = 0.0; // m
    double mu12 = 1.0;    // permeability ratio mu1/mu2
    double sigma = 0.0;   // N/m

    void validate() const {
        if (!(inner_a > 0.0 && inner_a < outer_b))
            throw std::domain_error("AnnulusScenario: need 0 < inner_a < outer_b");
        if (!(mu12 > 0.0)) throw std::domain_error("AnnulusScenario: mu12 must be positive");
        if (!(sigma > 0.0)) throw std::domain_error("AnnulusScenario: sigma must be positive");
    }
    bool dilute_warning() const { return std::fabs(mu12 - 1.0) > 0.05; }
};

/// Total surface stress on the dilute ball (attractive, so <= 0):
/// P = -[(eps-1)^2 hbar c / (256 pi a^4)] * [16/delta^3 + 1/4], delta = tau*c/a.
inline double ball_surface_stress(const BallScenario& s) {
    s.validate();
    double e = s.epsilon_minus_1;
    if (e == 0.0) return 0.0;
    double a = s.radius_a;
    double delta = s.tau * units::c / a;
    double bracket = 16.0 / (delta * delta * delta) + 0.25;
    return -e * e * units::hbar_c / (256.0 * pi * a * a * a * a) * bracket;
}

/// Cutoff-dependent part of the ball stress:
/// P_cutoff = -[(eps-1)^2/(16 pi)] * hbar / (a c^2 tau^3).
inline double ball_cutoff_stress(const BallScenario& s) {
    s.validate();
    double e = s.epsilon_minus_1;
    if (e == 0.0) return 0.0;
    return -e * e / (16.0 * pi) * units::hbar /
           (s.radius_a * units::c * units::c * s.tau * s.tau * s.tau);
}

namespace detail {

/// Material factor of the isorefractive pressure, symmetric in mu -> 1/mu.
/// Canonicalised so reciprocal inputs evaluate on identical operands.
inline double mu_factor(double mu12) {
    if (!(mu12 > 0.0)) throw std::domain_error("mu_factor: mu12 must be positive");
    double m = mu12 < 1.0 ? 1.0 / mu12 : mu12;
    double r = (m - 1.0) / (m + 1.0);
    return r * r * (1.0 + 0.311 * m / ((m + 1.0) * (m + 1.0)));
}

} // namespace detail

/// Outward Casimir pressure on an isorefractive sphere of radius r:
/// P = (0.09235 / 8 pi) (hbar c / r^4) f(mu12), with f the material factor.
inline double isorefractive_surface_pressure(double mu12, double r) {
    if (!(r > 0.0)) throw std::domain_error("isorefractive_surface_pressure: r must be positive");
    return units::casimir_coefficient / (8.0 * pi) * units::hbar_c /
           (r * r * r * r) * detail::mu_factor(mu12);
}

/// Dilute-limit radial Casimir force per unit solid angle on the annulus:
/// F/dOmega = (0.09235 hbar c / 32 pi) (mu-1)^2 (1/a^2 + 1/b^2).
inline double cone_force_dilute(double a, double b, double mu) {
    if (!(a > 0.0 && a < b)) throw std::domain_error("cone_force_dilute: need 0 < a < b");
    if (!(std::fabs(mu - 1.0) <= 0.1))
        throw std::domain_error("cone_force_dilute: |mu-1| must be <= 0.1");
    double d = mu - 1.0;
    return units::casimir_coefficient * units::hbar_c / (32.0 * pi) * d * d *
           (1.0 / (a * a) + 1.0 / (b * b));
}

/// Hole-pressure constant C = 0.09235 hbar c f(mu12), chosen so that
/// C/(8 pi R^4) reproduces isorefractive_surface_pressure(mu12, R).
inline double hole_pressure_constant(double mu12) {
    return units::casimir_constant_si() * detail::mu_factor(mu12);
}

/// Variant with the material factor replaced by unity (C ~ 2.92e-27 J*m).
inline double hole_pressure_constant_unity() { return units::casimir_constant_si(); }

/// Surface pressure of a hole of instantaneous radius R: P = C/(8 pi R^4).
inline double hole_surface_pressure(double C, double R) {
    if (!(R > 0.0)) throw std::domain_error("hole_surface_pressure: R must be positive");
    if (!(C >= 0.0)) throw std::domain_error("hole_surface_pressure: C must be non-negative");
    return C / (8.0 * pi * R * R * R * R);
}

/// Clausius-Mossotti density derivative: rho * d(eps)/d(rho) = (eps-1)(eps+2)/3.
inline double clausius_mossotti_density_derivative(double epsilon) {
    if (!(epsilon >= 1.0))
        throw std::domain_error("clausius_mossotti_density_derivative: epsilon must be >= 1");
    return (epsilon - 1.0) * (epsilon + 2.0) / 3.0;
}

} // namespace casimir::pressures
