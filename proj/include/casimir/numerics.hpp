#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

// Shared deterministic numerical kernels: bracketed root-finding, adaptive
// Gauss-Kronrod quadrature with inverse-square-root endpoint substitutions,
// and an adaptive embedded Runge-Kutta ODE stepper. All kernels are
// stateless; identical problems produce bit-identical results.

namespace casimir::numerics {

class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when adaptive refinement cannot meet the requested tolerance;
/// carries the best estimate obtained.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& msg, double best)
        : std::runtime_error(msg), best_estimate(best) {}
    double best_estimate;
};

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

struct RootProblem {
    std::function<double(double)> residual;
    double lo = 0.0;
    double hi = 0.0;
    double rel_tol = 1e-13;
};

/// Bracketed root-finder: secant steps alternating with bisection so the
/// bracket at least halves every two iterations. Returns x with the bracket
/// width below rel_tol*|x|. Roots at a bracket endpoint are returned as-is.
inline double find_root(const RootProblem& p) {
    double a = p.lo, b = p.hi;
    if (!(a < b)) throw BracketError("find_root: bracket lo must be below hi");
    double fa = p.residual(a);
    double fb = p.residual(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw BracketError("find_root: no sign change on bracket");

    const double floor = std::numeric_limits<double>::min();
    for (int iter = 0; iter < 200; ++iter) {
        double width = b - a;
        double scale = std::max({std::fabs(a), std::fabs(b), floor});
        if (width <= p.rel_tol * scale)
            return std::fabs(fa) <= std::fabs(fb) ? a : b;

        double s;
        if (iter % 2 == 0 && fb != fa) {
            s = b - fb * width / (fb - fa); // secant
            if (!(s > a + 0.01 * width) || !(s < b - 0.01 * width))
                s = a + 0.5 * width;
        } else {
            s = a + 0.5 * width;
        }
        double fs = p.residual(s);
        if (fs == 0.0) return s;
        if (fa * fs < 0.0) {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
    }
    throw ConvergenceError("find_root: not converged in 200 iterations");
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

enum class Singularity { none, inv_sqrt_lo, inv_sqrt_hi, both };

struct QuadratureProblem {
    std::function<double(double)> integrand;
    double lo = 0.0;
    double hi = 0.0;
    Singularity endpoint_singularity = Singularity::none;
    double rel_tol = 1e-10;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair on [-1, 1].
inline constexpr std::array<double, 8> gk_nodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr std::array<double, 8> gk_wk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr std::array<double, 4> gk_wg = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <class F>
inline void gk15(const F& f, double a, double b, double& kronrod, double& err) {
    double h = 0.5 * (b - a);
    double m = 0.5 * (a + b);
    double sk = gk_wk[7] * f(m);
    double sg = gk_wg[3] * f(m);
    for (int i = 0; i < 7; ++i) {
        double x = h * gk_nodes[i];
        double fsum = f(m - x) + f(m + x);
        sk += gk_wk[i] * fsum;
        if (i % 2 == 1) sg += gk_wg[i / 2] * fsum;
    }
    kronrod = sk * h;
    err = std::fabs((sk - sg) * h);
}

struct AdaptiveState {
    double sum = 0.0;
    double abs_sum = 0.0;
    bool tolerance_met = true;
    long panels = 0; // work cap: an integrand at its rounding-noise floor
                     // must fail fast instead of filling the depth-55 tree
};

template <class F>
inline void adapt(const F& f, double a, double b, double budget, int depth,
                  AdaptiveState& st) {
    double k, e;
    gk15(f, a, b, k, e);
    ++st.panels;
    if (e <= budget || depth >= 55 || st.panels > 100000 ||
        b - a <= std::numeric_limits<double>::epsilon() * std::fabs(a)) {
        if (e > budget && (depth >= 55 || st.panels > 100000)) st.tolerance_met = false;
        st.sum += k;
        st.abs_sum += std::fabs(k);
        return;
    }
    double m = 0.5 * (a + b);
    adapt(f, a, m, 0.5 * budget, depth + 1, st);
    adapt(f, m, b, 0.5 * budget, depth + 1, st);
}

template <class F>
inline double integrate_smooth(const F& f, double a, double b, double rel_tol) {
    if (a == b) return 0.0;
    double k0, e0;
    gk15(f, a, b, k0, e0);
    double scale = std::max(std::fabs(k0), std::numeric_limits<double>::min());
    AdaptiveState st;
    adapt(f, a, b, rel_tol * scale, 0, st);
    // One refinement pass with the budget tied to the improved estimate.
    if (std::fabs(st.sum) > 10.0 * scale) {
        AdaptiveState st2;
        adapt(f, a, b, rel_tol * std::fabs(st.sum), 0, st2);
        st = st2;
    }
    if (!st.tolerance_met)
        throw AccuracyError("integrate: tolerance not met at max depth", st.sum);
    return st.sum;
}

// Declared inverse-square-root singularities must be integrable: the
// integrand times sqrt(distance to the endpoint) has to stay bounded.
inline void check_inv_sqrt(const std::function<double(double)>& f, double endpoint,
                           double towards, bool at_lo) {
    double len = std::fabs(towards - endpoint);
    double prev = 0.0;
    for (int k = 2; k <= 6; k += 2) {
        double d = len * std::pow(10.0, -k);
        double x = at_lo ? endpoint + d : endpoint - d;
        double v = f(x) * std::sqrt(d);
        if (!std::isfinite(v))
            throw std::domain_error("integrate: declared singularity is not integrable");
        if (k > 2 && std::fabs(v) > 5.0 * std::fabs(prev) + 1e-300)
            throw std::domain_error(
                "integrate: endpoint behaviour stronger than 1/sqrt, not integrable");
        prev = v;
    }
}

} // namespace detail

/// Adaptive quadrature. Flagged 1/sqrt endpoint singularities are removed
/// exactly by the substitution x = endpoint +/- u^2 before refinement.
inline double integrate(const QuadratureProblem& p) {
    if (!(p.lo <= p.hi)) throw std::domain_error("integrate: lo must not exceed hi");
    if (p.lo == p.hi) return 0.0;
    const auto& f = p.integrand;
    double lo = p.lo, hi = p.hi;

    auto lo_piece = [&](double a, double b) {
        detail::check_inv_sqrt(f, a, b, true);
        double w = std::sqrt(b - a);
        return detail::integrate_smooth(
            [&f, a](double u) { return 2.0 * u * f(a + u * u); }, 0.0, w, p.rel_tol);
    };
    auto hi_piece = [&](double a, double b) {
        detail::check_inv_sqrt(f, b, a, false);
        double w = std::sqrt(b - a);
        return detail::integrate_smooth(
            [&f, b](double u) { return 2.0 * u * f(b - u * u); }, 0.0, w, p.rel_tol);
    };

    switch (p.endpoint_singularity) {
    case Singularity::none:
        return detail::integrate_smooth(f, lo, hi, p.rel_tol);
    case Singularity::inv_sqrt_lo:
        return lo_piece(lo, hi);
    case Singularity::inv_sqrt_hi:
        return hi_piece(lo, hi);
    case Singularity::both: {
        double mid = 0.5 * (lo + hi);
        return lo_piece(lo, mid) + hi_piece(mid, hi);
    }
    }
    throw std::logic_error("integrate: bad singularity flag");
}

// ---------------------------------------------------------------------------
// ODE integration (scalar, adaptive Cash-Karp RK45)
// ---------------------------------------------------------------------------

struct OdeSolution {
    std::vector<double> x;
    std::vector<double> y;
    bool complete = true; // false when the step size underflowed
};

namespace detail {

/// One embedded Cash-Karp step; returns 5th-order y and the 4th/5th
/// order difference as the error estimate.
template <class Rhs>
inline void ck_step(const Rhs& rhs, double x, double y, double h, double& y5,
                    double& err) {
    double k1 = rhs(x, y);
    double k2 = rhs(x + 0.2 * h, y + h * 0.2 * k1);
    double k3 = rhs(x + 0.3 * h, y + h * (0.075 * k1 + 0.225 * k2));
    double k4 = rhs(x + 0.6 * h, y + h * (0.3 * k1 - 0.9 * k2 + 1.2 * k3));
    double k5 = rhs(x + h, y + h * (-11.0 / 54.0 * k1 + 2.5 * k2 - 70.0 / 27.0 * k3 +
                                    35.0 / 27.0 * k4));
    double k6 = rhs(x + 0.875 * h,
                    y + h * (1631.0 / 55296.0 * k1 + 175.0 / 512.0 * k2 +
                             575.0 / 13824.0 * k3 + 44275.0 / 110592.0 * k4 +
                             253.0 / 4096.0 * k5));
    y5 = y + h * (37.0 / 378.0 * k1 + 250.0 / 621.0 * k3 + 125.0 / 594.0 * k4 +
                  512.0 / 1771.0 * k6);
    double y4 = y + h * (2825.0 / 27648.0 * k1 + 18575.0 / 48384.0 * k3 +
                         13525.0 / 55296.0 * k4 + 277.0 / 14336.0 * k5 + 0.25 * k6);
    err = std::fabs(y5 - y4);
}

} // namespace detail

/// Integrates y' = rhs(x, y) from x0 to x1 (either direction). When
/// sample_at is non-empty the solution is reported exactly at those points
/// (they must be sorted in the direction of integration and lie in [x0, x1]);
/// otherwise every accepted step is reported.
template <class Rhs>
inline OdeSolution ode_solve(const Rhs& rhs, double y0, double x0, double x1,
                             double rel_tol, std::span<const double> sample_at = {}) {
    OdeSolution out;
    double dir = x1 >= x0 ? 1.0 : -1.0;
    double x = x0, y = y0;
    double span = std::fabs(x1 - x0);
    if (span == 0.0) {
        out.x = {x0};
        out.y = {y0};
        return out;
    }
    std::size_t next_sample = 0;
    bool record_steps = sample_at.empty();
    if (record_steps) {
        out.x.push_back(x);
        out.y.push_back(y);
    } else {
        while (next_sample < sample_at.size() && sample_at[next_sample] == x0) {
            out.x.push_back(x0);
            out.y.push_back(y0);
            ++next_sample;
        }
    }

    double h = dir * span * 1e-4;
    const double floor = std::numeric_limits<double>::min();
    const long max_steps = 4000000;
    for (long step = 0; step < max_steps && dir * (x1 - x) > 0.0; ++step) {
        double target = x1;
        if (next_sample < sample_at.size()) target = sample_at[next_sample];
        bool clipped = false;
        if (dir * (x + h - target) >= 0.0) {
            h = target - x;
            clipped = true;
        }

        double y5, err;
        detail::ck_step(rhs, x, y, h, y5, err);
        double scale = rel_tol * std::max({std::fabs(y), std::fabs(y5), floor});
        if (err <= scale || std::fabs(h) <= 16.0 * std::numeric_limits<double>::epsilon() *
                                                std::fabs(x) + 1e-300) {
            if (std::fabs(h) <= 16.0 * std::numeric_limits<double>::epsilon() *
                                    std::fabs(x) + 1e-300 &&
                err > scale) {
                out.complete = false;
                out.x.push_back(x);
                out.y.push_back(y);
                return out;
            }
            x = clipped ? target : x + h;
            y = y5;
            if (record_steps) {
                out.x.push_back(x);
                out.y.push_back(y);
            } else if (next_sample < sample_at.size() && x == sample_at[next_sample]) {
                out.x.push_back(x);
                out.y.push_back(y);
                ++next_sample;
            }
            double grow = err > 0.0 ? 0.9 * std::pow(scale / err, 0.2) : 5.0;
            h *= std::clamp(grow, 0.2, 5.0);
        } else {
            h *= std::clamp(0.9 * std::pow(scale / err, 0.25), 0.1, 1.0);
        }
    }
    if (dir * (x1 - x) > 0.0) out.complete = false;
    return out;
}

} // namespace casimir::numerics
