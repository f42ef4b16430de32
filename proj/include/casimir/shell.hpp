#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "casimir/numerics.hpp"
#include "casimir/trajectory.hpp"

// Singular-shell collapse with a Casimir surface pressure, in geometric
// units (G = c = 1; mass and time in meters). The dynamics come from
//   sqrt(1 + Rdot^2) = 1 - C/(2MR) + (M/2R) / (1 - C/(2MR)),
// which has Rdot = 0 at R = infinity. This is a model study: it ignores the
// gravitational energy of the Casimir field itself, so the bounce it
// predicts should not be read as physical.
//
// The commonly quoted minimum radius C/(2M) is a true velocity zero only
// when C > M^2 (the turning point then sits at C^2/(2M(C - M^2))); for
// physical masses C << M^2 and Rdot^2 instead diverges at C/(2M).

namespace casimir::shell {

struct ShellScenario {
    double M = 0.0;       // Schwarzschild mass, geometric meters
    double C = 0.0;       // Casimir constant, geometric m^2
    double R_start = 0.0; // initial radius, m

    double singular_radius() const { return M > 0.0 ? C / (2.0 * M) : 0.0; }

    void validate() const {
        if (!(M > 0.0)) throw std::domain_error("ShellScenario: M must be positive");
        if (!(C >= 0.0)) throw std::domain_error("ShellScenario: C must be non-negative");
        if (!(R_start > singular_radius()))
            throw std::domain_error("ShellScenario: R_start must exceed the singular radius C/(2M)");
        if (!std::isfinite(R_start))
            throw std::domain_error("ShellScenario: R_start must be finite");
    }
};

/// sqrt(1 + Rdot^2) as a function of the shell radius.
inline double eom_rhs(double R, const ShellScenario& s) {
    double rs = s.singular_radius();
    if (!(R > rs))
        throw std::domain_error("eom_rhs: R must lie strictly outside the singular radius C/(2M)");
    double u = s.C / (2.0 * s.M * R);
    return 1.0 - u + s.M / (2.0 * R) / (1.0 - u);
}

/// Rdot^2; negative values mark the forbidden region (possible only when
/// C > M^2).
inline double rdot_sq(double R, const ShellScenario& s) {
    double rs = s.singular_radius();
    if (!(R > rs))
        throw std::domain_error("rdot_sq: R must lie strictly outside the singular radius C/(2M)");
    // work with g - 1 directly: forming g^2 - 1 from g loses precision once
    // g is close to 1 (large R, or small M), and the C = 0 reduction
    // M/R + M^2/4R^2 must hold to machine precision
    double u = s.C / (2.0 * s.M * R);
    double gm1 = -u + s.M / (2.0 * R) / (1.0 - u);
    return gm1 * (gm1 + 2.0);
}

enum class BounceKind { turning_point, singular_approach, no_bounce };

inline std::string_view to_string(BounceKind k) {
    switch (k) {
    case BounceKind::turning_point: return "turning_point";
    case BounceKind::singular_approach: return "singular_approach";
    case BounceKind::no_bounce: return "no_bounce";
    }
    return "?";
}

struct BounceClassification {
    BounceKind kind = BounceKind::no_bounce;
    double R_critical = 0.0;        // turning point, pole radius, or 0
    double quoted_R_min = 0.0;      // the literature value C/(2M), always reported
};

/// Classifies the end state of the collapse. For C > M^2 the closed-form
/// turning point C^2/(2M(C - M^2)) is confirmed by a bracketed root-find of
/// Rdot^2 = 0 (agreement to 1e-12 relative).
inline BounceClassification classify_bounce(const ShellScenario& s) {
    s.validate();
    BounceClassification out;
    out.quoted_R_min = s.singular_radius();
    if (s.C == 0.0) {
        out.kind = BounceKind::no_bounce;
        out.R_critical = 0.0;
        return out;
    }
    if (s.C > s.M * s.M) {
        out.kind = BounceKind::turning_point;
        double closed = s.C * s.C / (2.0 * s.M * (s.C - s.M * s.M));
        numerics::RootProblem p;
        p.residual = [&](double R) { return rdot_sq(R, s); };
        p.lo = s.singular_radius() * (1.0 + 1e-9);
        p.hi = std::max(4.0 * closed, s.R_start);
        p.rel_tol = 1e-14;
        double found = numerics::find_root(p);
        if (std::fabs(found - closed) > 1e-12 * closed)
            throw numerics::ConvergenceError(
                "classify_bounce: root-found turning radius disagrees with closed form");
        out.R_critical = closed;
        return out;
    }
    out.kind = BounceKind::singular_approach;
    out.R_critical = s.singular_radius();
    return out;
}

struct Sampling {
    int n_samples = 200;
    double R_floor = 0.0; // no_bounce runs stop here (must be > 0 for C = 0)
};

/// Integrates the shell radius in proper time with an adaptive embedded
/// Runge-Kutta step, the step size tied to the distance from the critical
/// radius. Collapse runs inward to 1.001x the pole (singular_approach), or
/// to the caller floor (no_bounce); in the turning-point regime the shell
/// moves outward from R_start and is stopped at 0.999x the turning radius,
/// just inside the velocity zero.
inline Trajectory proper_time_trajectory(const ShellScenario& s, const Sampling& sampling) {
    s.validate();
    if (sampling.n_samples < 2 || sampling.n_samples > 1000000)
        throw std::domain_error("proper_time_trajectory: n_samples must be in [2, 1e6]");
    auto cls = classify_bounce(s);

    double dir, r_stop;
    switch (cls.kind) {
    case BounceKind::turning_point:
        if (!(s.R_start < cls.R_critical))
            throw std::domain_error(
                "proper_time_trajectory: R_start lies in the forbidden region above the turning point");
        dir = +1.0;
        r_stop = cls.R_critical * (1.0 - 1e-3);
        break;
    case BounceKind::singular_approach:
        dir = -1.0;
        r_stop = cls.R_critical * (1.0 + 1e-3);
        break;
    default:
        dir = -1.0;
        r_stop = sampling.R_floor;
        if (!(r_stop > 0.0))
            throw std::domain_error("proper_time_trajectory: R_floor must be positive when C = 0");
        break;
    }
    if (dir * (r_stop - s.R_start) <= 0.0)
        throw std::domain_error("proper_time_trajectory: R_start is already past the stop radius");

    auto speed = [&](double R) { return std::sqrt(std::max(0.0, rdot_sq(R, s))); };
    auto rhs = [&](double R) { return dir * speed(R); };

    std::vector<TrajectorySample> raw;
    double tau = 0.0, R = s.R_start;
    raw.push_back({tau, R, rhs(R)});

    double guard = cls.kind == BounceKind::no_bounce ? 0.0 : cls.R_critical;
    double h = 1e-4 * std::fabs(r_stop - s.R_start) / std::max(speed(R), 1e-30);
    const long max_steps = 2000000;
    for (long step = 0; step < max_steps && dir * (r_stop - R) > 0.0; ++step) {
        double f = std::fabs(rhs(R));
        if (f < 1e-300) break; // started at rest exactly on a turning point
        // keep each step well clear of the pole; allow a slight overshoot of
        // the stop radius (the landing step below bisects back onto it)
        h = std::min(h, 0.1 * std::fabs(R - guard) / f);
        h = std::min(h, 1.5 * std::fabs(R - r_stop) / f);
        if (!(h > 0.0) || h < 1e-300 ||
            h < 16.0 * std::numeric_limits<double>::epsilon() * std::fabs(tau)) {
            break; // tau can no longer resolve the step
        }
        double R5, err;
        numerics::detail::ck_step([&](double, double y) { return rhs(y); }, tau, R, h, R5, err);
        double scale = 1e-11 * std::max(std::fabs(R), std::fabs(R5));
        if (err <= scale) {
            bool landed = false;
            if (dir * (r_stop - R5) < 0.0) {
                landed = true;
                // bisect the step length to land on the stop radius
                double h_lo = 0.0, h_hi = h;
                for (int i = 0; i < 80; ++i) {
                    double hm = 0.5 * (h_lo + h_hi);
                    double Rm, em;
                    numerics::detail::ck_step([&](double, double y) { return rhs(y); }, tau, R,
                                              hm, Rm, em);
                    (dir * (r_stop - Rm) < 0.0 ? h_hi : h_lo) = hm;
                }
                h = h_lo;
                numerics::detail::ck_step([&](double, double y) { return rhs(y); }, tau, R, h,
                                          R5, err);
            }
            tau += h;
            R = R5;
            raw.push_back({tau, R, rhs(R)});
            if (landed) {
                R = r_stop; // the bisection converged onto it to ~1 ulp
                break;
            }
            double grow = err > 0.0 ? 0.9 * std::pow(scale / err, 0.2) : 5.0;
            h *= std::clamp(grow, 0.2, 5.0);
        } else {
            h *= std::clamp(0.9 * std::pow(scale / err, 0.25), 0.1, 1.0);
        }
    }

    Trajectory traj;
    if (dir * (r_stop - R) > 1e-6 * std::fabs(r_stop)) {
        traj.terminal_event = TerminalEvent::step_limit;
    } else if (cls.kind == BounceKind::no_bounce) {
        traj.terminal_event = TerminalEvent::reached_target;
    } else {
        traj.terminal_event = TerminalEvent::bounce;
    }

    // thin to the requested sample count, keeping the endpoints
    std::size_t n = static_cast<std::size_t>(sampling.n_samples);
    if (raw.size() <= n) {
        traj.samples = std::move(raw);
    } else {
        traj.samples.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t j = i * (raw.size() - 1) / (n - 1);
            traj.samples.push_back(raw[j]);
        }
    }
    return traj;
}

} // namespace casimir::shell
