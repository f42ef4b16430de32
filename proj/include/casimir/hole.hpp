#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "casimir/numerics.hpp"
#include "casimir/pressures.hpp"
#include "casimir/trajectory.hpp"

// Casimir-modified Rayleigh hole filling: an incompressible, inviscid,
// non-relativistic fluid fills a spherical vacuum hole against an outward
// Casimir surface pressure C/(8 pi R^4). The surface-velocity profile has a
// closed form; the Casimir term turns the classic collapse to R = 0 into a
// bounce at a finite radius. The post-bounce re-expansion is the time
// reverse of the infall and is not simulated.

namespace casimir::hole {

inline constexpr double pi = std::numbers::pi;

struct HoleScenario {
    double a = 0.0;     // initial hole radius, m
    double p_inf = 0.0; // ambient pressure, Pa
    double rho = 0.0;   // fluid density, kg/m^3
    double C = 0.0;     // Casimir constant, J*m

    void validate() const {
        if (!(a > 0.0)) throw std::domain_error("HoleScenario: a must be positive");
        if (!(p_inf > 0.0)) throw std::domain_error("HoleScenario: p_inf must be positive");
        if (!(rho > 0.0)) throw std::domain_error("HoleScenario: rho must be positive");
        if (!(C >= 0.0)) throw std::domain_error("HoleScenario: C must be non-negative");
        // Filling only starts if the ambient pressure beats the initial
        // Casimir pressure on the surface.
        if (C > 0.0 && !(p_inf > pressures::hole_surface_pressure(C, a)))
            throw std::domain_error(
                "HoleScenario: p_inf must exceed the initial Casimir pressure C/(8 pi a^4)");
    }
};

/// Squared surface velocity as a function of the hole radius:
/// V^2 = (a^3/R^3) [ (2 p_inf / 3 rho)(1 - R^3/a^3)
///                   - (C / 4 pi rho)(1/(R a^3))(1 - R/a) ].
/// Negative values mark the forbidden region below the bounce.
inline double vsq(double R, const HoleScenario& s) {
    if (!(R > 0.0 && R <= s.a)) throw std::domain_error("vsq: need 0 < R <= a");
    double a3 = s.a * s.a * s.a;
    double x = R / s.a;
    double x3 = x * x * x;
    // both terms share the factor (1 - R/a); keeping it factored out avoids
    // the cancellation in 1 - R^3/a^3 that otherwise dominates near R = a
    double bracket = (s.a - R) / s.a *
                     (2.0 * s.p_inf / (3.0 * s.rho) * (1.0 + x + x * x) -
                      s.C / (4.0 * pi * s.rho * R * a3));
    return bracket / x3;
}

/// Right-hand side of the reduced surface equation of motion:
/// dV^2/dR = C/(4 pi rho R^5) - 2 p_inf/(rho R) - 3 V^2/R.
inline double ode_rhs(double R, double Vsq, const HoleScenario& s) {
    if (!(R > 0.0)) throw std::domain_error("ode_rhs: R must be positive");
    return s.C / (4.0 * pi * s.rho * R * R * R * R * R) -
           2.0 * s.p_inf / (s.rho * R) - 3.0 * Vsq / R;
}

/// Small-R/a limit of the bounce radius: R_min = 3C/(8 pi p_inf a^3).
inline double bounce_radius_asymptotic(const HoleScenario& s) {
    s.validate();
    if (!(s.C > 0.0))
        throw std::domain_error("bounce_radius_asymptotic: no bounce without Casimir term (C = 0)");
    return 3.0 * s.C / (8.0 * pi * s.p_inf * s.a * s.a * s.a);
}

/// Exact bounce radius: the smallest zero of V^2 in (0, a). The bracket of
/// the velocity profile, multiplied by R for conditioning, has exactly one
/// interior root (its derivative is strictly concave).
inline double bounce_radius_exact(const HoleScenario& s) {
    s.validate();
    if (!(s.C > 0.0))
        throw std::domain_error("bounce_radius_exact: no bounce without Casimir term (C = 0)");
    double a3 = s.a * s.a * s.a;
    auto phi = [&](double R) {
        double x = R / s.a;
        return (s.a - R) / s.a *
               (2.0 * s.p_inf / (3.0 * s.rho) * R * (1.0 + x + x * x) -
                s.C / (4.0 * pi * s.rho * a3));
    };
    double hi = s.a * (1.0 - 1e-6);
    if (!(phi(hi) > 0.0))
        throw numerics::BracketError("bounce_radius_exact: no filling region near R = a");
    double lo = hi;
    while (phi(lo) > 0.0) {
        hi = lo;
        lo *= 0.25;
        if (lo < 1e-300)
            throw numerics::BracketError("bounce_radius_exact: bracket scan underflowed");
    }
    numerics::RootProblem p;
    p.residual = phi;
    p.lo = lo;
    p.hi = hi;
    p.rel_tol = 1e-14;
    return numerics::find_root(p);
}

namespace detail {

inline double safe_speed(double R, const HoleScenario& s) {
    double v2 = vsq(R, s);
    return std::sqrt(std::max(v2, std::numeric_limits<double>::min()));
}

/// V^2 parameterised by the distance d = a - R. Needed close to the start:
/// reconstructing d from a rounded R = a - u^2 collapses to zero once
/// u^2 < eps*a, while d itself stays meaningful.
inline double vsq_near_a(double d, const HoleScenario& s) {
    double R = s.a - d;
    double x = R / s.a;
    double a3 = s.a * s.a * s.a;
    double bracket = d / s.a *
                     (2.0 * s.p_inf / (3.0 * s.rho) * (1.0 + x + x * x) -
                      s.C / (4.0 * pi * s.rho * R * a3));
    return bracket / (x * x * x);
}

/// Time for the surface to move from r2 down to r1, with the substitution
/// R = R_bounce + w^2 (w = sqrt(R) when C = 0) removing the inverse-sqrt
/// behaviour at the turning point.
inline double segment_time(double r1, double r2, double r_bounce, const HoleScenario& s) {
    if (r1 >= r2) return 0.0;
    double w1 = std::sqrt(std::max(0.0, r1 - r_bounce));
    double w2 = std::sqrt(r2 - r_bounce);
    numerics::QuadratureProblem q;
    q.integrand = [&](double w) { return 2.0 * w / safe_speed(r_bounce + w * w, s); };
    q.lo = w1;
    q.hi = w2;
    q.rel_tol = 1e-10;
    return numerics::integrate(q);
}

} // namespace detail

/// Time for the surface to travel from R = a down to R_target, by direct
/// quadrature of dt = dR / sqrt(V^2). The integrand has integrable
/// inverse-square-root singularities at the start (R = a) and at the bounce;
/// the integral is split at the geometric mean of a and the bounce radius so
/// each substitution stays well-conditioned.
inline double fill_time(double R_target, const HoleScenario& s) {
    s.validate();
    double r_bounce = s.C > 0.0 ? bounce_radius_exact(s) : 0.0;
    if (s.C > 0.0 && R_target < r_bounce * (1.0 - 1e-9))
        throw std::domain_error("fill_time: R_target is below the bounce radius (forbidden region)");
    if (!(R_target >= 0.0 && R_target <= s.a))
        throw std::domain_error("fill_time: need 0 <= R_target <= a");
    if (R_target == s.a) return 0.0;
    R_target = std::max(R_target, r_bounce);

    double split = s.C > 0.0 ? std::sqrt(s.a * r_bounce) : 0.5 * s.a;
    split = std::clamp(split, R_target, s.a);

    double t = detail::segment_time(R_target, split, r_bounce, s);
    if (split < s.a) {
        // R = a - w^2 removes the 1/sqrt start singularity; V^2 is evaluated
        // from the distance w^2 directly
        numerics::QuadratureProblem q;
        q.integrand = [&](double w) {
            double v2 = detail::vsq_near_a(w * w, s);
            return 2.0 * w / std::sqrt(std::max(v2, std::numeric_limits<double>::min()));
        };
        q.lo = 0.0;
        q.hi = std::sqrt(s.a - split);
        q.rel_tol = 1e-10;
        t += numerics::integrate(q);
    }
    return t;
}

struct Sampling {
    int n_samples = 200;
    double R_floor = 0.0; // 0: run to the bounce (C > 0) or to 1e-6*a (C = 0)
};

/// Time-domain infall trajectory on a geometric grid of radii from just
/// inside R = a down to the bounce neighbourhood (or a caller floor).
inline Trajectory simulate(const HoleScenario& s, const Sampling& sampling) {
    s.validate();
    if (sampling.n_samples < 2 || sampling.n_samples > 1000000)
        throw std::domain_error("simulate: n_samples must be in [2, 1e6]");

    double r_bounce = s.C > 0.0 ? bounce_radius_exact(s) : 0.0;
    double r_hi = s.a * (1.0 - 1e-6);
    double r_stop_bounce = r_bounce * (1.0 + 5e-4);
    double r_lo;
    TerminalEvent event;
    if (s.C > 0.0 && sampling.R_floor <= r_stop_bounce) {
        r_lo = r_stop_bounce;
        event = TerminalEvent::bounce;
    } else {
        r_lo = sampling.R_floor > 0.0 ? sampling.R_floor : 1e-6 * s.a;
        event = TerminalEvent::reached_target;
    }
    if (!(r_lo < r_hi)) throw std::domain_error("simulate: radius floor must be below a");

    int n = sampling.n_samples;
    double log_hi = std::log(r_hi), log_lo = std::log(r_lo);
    Trajectory traj;
    traj.terminal_event = event;
    traj.samples.reserve(static_cast<std::size_t>(n));

    double t_prev = 0.0;
    for (int i = 0; i < n; ++i) {
        double r = std::exp(log_hi + (log_lo - log_hi) * i / (n - 1));
        if (i == n - 1) r = r_lo;
        // each sample time is an independent quadrature; clamp away the
        // sub-tolerance jitter so the reported times are monotone
        double t = std::max(fill_time(r, s), t_prev);
        traj.samples.push_back({t, r, -std::sqrt(std::max(0.0, vsq(r, s)))});
        t_prev = t;
    }
    return traj;
}

} // namespace casimir::hole
