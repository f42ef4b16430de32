#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "casimir/constants.hpp"
#include "casimir/numerics.hpp"
#include "casimir/pressures.hpp"

// Static force balances: the time-splitting cutoff stress against Laplace
// surface pressure (solved for tau), and the annulus Casimir repulsion
// against surface tension (solved for sigma or for the inner radius).

namespace casimir::balance {

inline constexpr double pi = std::numbers::pi;

struct TauSolution {
    double tau = 0.0;             // s
    double tau_c = 0.0;           // m
    double sigma = 0.0;           // N/m (input echo)
    double epsilon_minus_1 = 0.0; // input echo
};

/// Balances the cutoff stress (eps-1)^2 hbar / (16 pi a c^2 tau^3) against
/// the Laplace pressure 2 sigma / a. The radius cancels, giving the closed
/// form tau = [(eps-1)^2 hbar / (32 pi sigma c^2)]^(1/3); an independent
/// bracketed root-find on the balance residual must agree to 1e-10 relative.
inline TauSolution solve_tau(double sigma, double epsilon_minus_1) {
    if (!(sigma > 0.0)) throw std::domain_error("solve_tau: sigma must be positive");
    double e = std::fabs(epsilon_minus_1);
    if (!(e > 0.0 && e <= 0.1))
        throw std::domain_error("solve_tau: need 0 < |eps-1| <= 0.1");

    double c2 = units::c * units::c;
    double tau = std::cbrt(e * e * units::hbar / (32.0 * pi * sigma * c2));

    numerics::RootProblem p;
    p.residual = [&](double t) {
        return e * e * units::hbar / (16.0 * pi * c2 * t * t * t) - 2.0 * sigma;
    };
    p.lo = 1e-25;
    p.hi = 1e-10;
    p.rel_tol = 1e-13;
    double tau_rf = numerics::find_root(p);
    if (std::fabs(tau_rf - tau) > 1e-10 * tau)
        throw numerics::ConvergenceError("solve_tau: closed form and root-finder disagree");

    return {tau, tau * units::c, sigma, epsilon_minus_1};
}

/// Surface tension that balances the dilute cone force against the inward
/// surface pull 2 sigma (a + b) per unit solid angle.
inline double annulus_required_sigma(double a, double b, double mu) {
    double force = pressures::cone_force_dilute(a, b, mu); // validates a, b, mu
    return force / (2.0 * (a + b));
}

enum class AnnulusVariant {
    paper_640pi, // literature small-hole coefficient 1/(640 pi), i.e. 0.09235 rounded to 0.1
    exact        // root-find of the full dilute balance at fixed b/a
};

/// Inner radius at which the annulus balance holds for a given surface
/// tension, at fixed ratio kappa = b/a >= 5.
inline double annulus_inner_radius(double sigma, double mu, double ratio_b_over_a,
                                   AnnulusVariant variant) {
    if (!(sigma > 0.0)) throw std::domain_error("annulus_inner_radius: sigma must be positive");
    if (!(ratio_b_over_a >= 5.0))
        throw std::domain_error("annulus_inner_radius: ratio b/a must be >= 5 (asymptotic regime)");
    double d = mu - 1.0;
    if (!(std::fabs(d) <= 0.1))
        throw std::domain_error("annulus_inner_radius: |mu-1| must be <= 0.1");
    if (d == 0.0)
        throw numerics::BracketError("annulus_inner_radius: mu = 1 gives no Casimir force to balance");
    double kappa = ratio_b_over_a;

    if (variant == AnnulusVariant::paper_640pi)
        return std::cbrt(units::hbar_c * d * d / (640.0 * pi * sigma * kappa));

    numerics::RootProblem p;
    p.residual = [&](double a) {
        return pressures::cone_force_dilute(a, kappa * a, mu) -
               2.0 * sigma * (a + kappa * a);
    };
    p.lo = 1e-15;
    p.hi = 1.0;
    p.rel_tol = 1e-13;
    return numerics::find_root(p);
}

} // namespace casimir::balance
