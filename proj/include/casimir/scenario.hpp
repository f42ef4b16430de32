#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "casimir/balance.hpp"
#include "casimir/constants.hpp"
#include "casimir/hole.hpp"
#include "casimir/pressures.hpp"
#include "casimir/shell.hpp"

// Scenario-file engine behind the CLI: JSON scenario parsing and
// validation, dispatch to the physics modules, parameter sweeps, and
// CSV/JSON result formatting. Identical inputs produce byte-identical
// outputs.

namespace casimir::scenario {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

/// Bad scenario input (CLI exit code 1).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Solver or numerical failure (CLI exit code 2).
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scientific notation with 12 significant digits, for CSV cells.
inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

namespace detail {

inline double get_number(const json& doc, const std::string& key) {
    if (!doc.contains(key))
        throw ValidationError("missing required field \"" + key + "\"");
    const auto& v = doc.at(key);
    if (!v.is_number()) throw ValidationError("field \"" + key + "\" must be a number");
    double x = v.get<double>();
    if (!std::isfinite(x)) throw ValidationError("field \"" + key + "\" must be finite");
    return x;
}

inline double get_number_or(const json& doc, const std::string& key, double fallback) {
    return doc.contains(key) ? get_number(doc, key) : fallback;
}

inline void reject_unknown_keys(const json& doc, const std::set<std::string>& allowed) {
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (!allowed.contains(it.key()))
            throw ValidationError("unknown key \"" + it.key() + "\" in scenario");
}

struct KindSpec {
    std::set<std::string> required;  // numeric inputs
    std::set<std::string> optional;  // numeric inputs with defaults
};

inline const std::map<std::string, KindSpec>& kind_specs() {
    static const std::map<std::string, KindSpec> specs = {
        {"tau_balance", {{"sigma", "epsilon_minus_1"}, {}}},
        {"annulus_balance", {{"sigma", "mu", "ratio_b_over_a"}, {}}},
        {"hole_filling", {{"a", "p_inf", "rho", "C"}, {"n_samples", "R_floor"}}},
        {"shell_collapse", {{}, {"n_samples", "R_floor"}}}, // mass/radius handled below
    };
    return specs;
}

} // namespace detail

/// A validated scenario: kind plus a flat numeric field map (shell masses
/// already converted to geometric units where applicable).
struct Scenario {
    std::string kind;
    std::map<std::string, double> fields; // raw inputs as given
    json sweep;                           // empty when absent
};

inline Scenario parse_scenario(const json& doc) {
    if (!doc.is_object()) throw ValidationError("scenario must be a JSON object");
    if (!doc.contains("kind") || !doc.at("kind").is_string())
        throw ValidationError("scenario needs a string field \"kind\"");
    Scenario s;
    s.kind = doc.at("kind").get<std::string>();
    const auto& specs = detail::kind_specs();
    auto it = specs.find(s.kind);
    if (it == specs.end())
        throw ValidationError("unknown kind \"" + s.kind + "\"");

    std::set<std::string> allowed = {"kind", "sweep"};
    for (const auto& k : it->second.required) allowed.insert(k);
    for (const auto& k : it->second.optional) allowed.insert(k);
    if (s.kind == "shell_collapse")
        for (const char* k : {"geometric_units", "mass_kg", "r_start", "M", "C", "R_start"})
            allowed.insert(k);
    detail::reject_unknown_keys(doc, allowed);

    for (const auto& k : it->second.required) s.fields[k] = detail::get_number(doc, k);
    for (const auto& k : it->second.optional)
        if (doc.contains(k)) s.fields[k] = detail::get_number(doc, k);

    if (s.kind == "shell_collapse") {
        bool geometric = doc.value("geometric_units", false);
        if (geometric) {
            s.fields["M"] = detail::get_number(doc, "M");
            s.fields["C"] = detail::get_number(doc, "C");
            s.fields["R_start"] = detail::get_number(doc, "R_start");
        } else {
            for (const char* k : {"M", "C", "R_start"})
                if (doc.contains(k))
                    throw ValidationError(std::string("field \"") + k +
                                          "\" requires \"geometric_units\": true");
            s.fields["mass_kg"] = detail::get_number(doc, "mass_kg");
            s.fields["r_start"] = detail::get_number(doc, "r_start");
        }
    }

    if (doc.contains("sweep")) {
        const auto& sw = doc.at("sweep");
        if (!sw.is_object()) throw ValidationError("\"sweep\" must be an object");
        detail::reject_unknown_keys(sw, {"field", "scale", "from", "to", "count"});
        if (!sw.contains("field") || !sw.at("field").is_string())
            throw ValidationError("sweep needs a string \"field\"");
        std::string field = sw.at("field").get<std::string>();
        if (!s.fields.contains(field))
            throw ValidationError("sweep field \"" + field + "\" does not exist for kind \"" +
                                  s.kind + "\"");
        std::string scale = sw.value("scale", "linear");
        if (scale != "linear" && scale != "log")
            throw ValidationError("sweep scale must be \"linear\" or \"log\"");
        double from = detail::get_number(sw, "from");
        double to = detail::get_number(sw, "to");
        if (from == to) throw ValidationError("empty sweep range (from == to)");
        if (scale == "log" && !(from > 0.0 && to > 0.0))
            throw ValidationError("log sweep needs positive endpoints");
        if (!sw.contains("count") || !sw.at("count").is_number_integer())
            throw ValidationError("sweep needs an integer \"count\"");
        long count = sw.at("count").get<long>();
        if (count < 2 || count > 1000000)
            throw ValidationError("sweep count must be in [2, 1e6]");
        s.sweep = sw;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

struct KindResult {
    ojson results; // flat scalar/string map, fixed key order per kind
    std::vector<std::string> notes;
};

namespace detail {

inline KindResult eval_tau_balance(const std::map<std::string, double>& f) {
    KindResult out;
    auto sol = balance::solve_tau(f.at("sigma"), f.at("epsilon_minus_1"));
    out.results["tau_s"] = sol.tau;
    out.results["tau_c_m"] = sol.tau_c;
    out.results["tau_c_angstrom"] = sol.tau_c * 1e10;
    if (std::fabs(f.at("epsilon_minus_1")) > 0.05)
        out.notes.push_back("|eps-1| > 0.05: outside the comfortable dilute regime");
    return out;
}

inline KindResult eval_annulus_balance(const std::map<std::string, double>& f) {
    KindResult out;
    double sigma = f.at("sigma"), mu = f.at("mu"), kappa = f.at("ratio_b_over_a");
    double a_paper =
        balance::annulus_inner_radius(sigma, mu, kappa, balance::AnnulusVariant::paper_640pi);
    double a_exact =
        balance::annulus_inner_radius(sigma, mu, kappa, balance::AnnulusVariant::exact);
    out.results["inner_radius_640pi_m"] = a_paper;
    out.results["inner_radius_exact_m"] = a_exact;
    out.results["outer_radius_640pi_m"] = kappa * a_paper;
    out.results["outer_radius_exact_m"] = kappa * a_exact;
    out.results["radius_ratio_exact_over_640pi"] = a_exact / a_paper;
    out.notes.push_back(
        "the 1/(640*pi) coefficient is the literature's small-hole limit and follows from "
        "rounding 0.09235 to 0.1; the exact balance gives a slightly smaller radius");
    if (std::fabs(mu - 1.0) > 0.05)
        out.notes.push_back("|mu-1| > 0.05: outside the comfortable dilute regime");
    return out;
}

inline hole::HoleScenario make_hole(const std::map<std::string, double>& f) {
    hole::HoleScenario s;
    s.a = f.at("a");
    s.p_inf = f.at("p_inf");
    s.rho = f.at("rho");
    s.C = f.at("C");
    s.validate();
    return s;
}

inline KindResult eval_hole_filling(const std::map<std::string, double>& f) {
    KindResult out;
    auto s = make_hole(f);
    double r_floor = f.contains("R_floor") ? f.at("R_floor") : 0.0;
    double r_stop;
    if (s.C > 0.0) {
        double exact = hole::bounce_radius_exact(s);
        double asym = hole::bounce_radius_asymptotic(s);
        out.results["bounce_radius_exact_m"] = exact;
        out.results["bounce_radius_asymptotic_m"] = asym;
        r_stop = std::max(r_floor, exact * (1.0 + 5e-4));
        if (exact < 1e-10)
            out.notes.push_back(
                "bounce radius is below atomic scale; the continuum fluid description is "
                "questionable there (reported, not clamped)");
    } else {
        out.results["bounce_radius_exact_m"] = 0.0;
        out.results["bounce_radius_asymptotic_m"] = 0.0;
        r_stop = r_floor > 0.0 ? r_floor : 1e-6 * s.a;
        out.notes.push_back("C = 0: pure Rayleigh collapse, no bounce");
    }
    out.results["initial_casimir_pressure_Pa"] =
        s.C > 0.0 ? pressures::hole_surface_pressure(s.C, s.a) : 0.0;
    out.results["fill_time_to_stop_s"] = hole::fill_time(r_stop, s);
    out.results["stop_radius_m"] = r_stop;
    out.notes.push_back(
        "a literature estimate quotes R_min ~ 3 Angstrom for p_inf = 1 mPa, a = 1 mm, "
        "C ~ 2.9e-27 J*m; the bounce-radius formula 3C/(8*pi*p_inf*a^3) evaluates to "
        "~3.5e-16 m for those inputs and does not reproduce that figure");
    return out;
}

inline shell::ShellScenario make_shell(const std::map<std::string, double>& f) {
    shell::ShellScenario s;
    if (f.contains("M")) {
        s.M = f.at("M");
        s.C = f.at("C");
        s.R_start = f.at("R_start");
    } else {
        s.M = units::mass_to_geometric(f.at("mass_kg"));
        s.C = units::casimir_constant_geometric();
        s.R_start = f.at("r_start");
    }
    s.validate();
    return s;
}

inline KindResult eval_shell_collapse(const std::map<std::string, double>& f) {
    KindResult out;
    auto s = make_shell(f);
    auto cls = shell::classify_bounce(s);
    out.results["M_geometric_m"] = s.M;
    out.results["C_geometric_m2"] = s.C;
    out.results["R_start_m"] = s.R_start;
    out.results["classification"] = std::string(shell::to_string(cls.kind));
    out.results["R_critical_m"] = cls.R_critical;
    out.results["quoted_R_min_m"] = cls.quoted_R_min;
    out.notes.push_back(
        "model study: the equation of motion ignores the gravitational energy of the "
        "Casimir field, so the predicted bounce should not be read as physical");
    if (cls.kind == shell::BounceKind::singular_approach)
        out.notes.push_back(
            "C <= M^2: the quoted minimum radius C/(2M) is the pole of the equation of "
            "motion, where the infall speed diverges, not a velocity zero");
    return out;
}

inline KindResult evaluate(const std::string& kind, const std::map<std::string, double>& f) {
    if (kind == "tau_balance") return eval_tau_balance(f);
    if (kind == "annulus_balance") return eval_annulus_balance(f);
    if (kind == "hole_filling") return eval_hole_filling(f);
    return eval_shell_collapse(f);
}

} // namespace detail

// ---------------------------------------------------------------------------
// run / sweep front ends
// ---------------------------------------------------------------------------

struct RunOutput {
    ojson summary;
    std::optional<std::string> trajectory_csv; // dynamic kinds only
};

inline RunOutput run_scenario(const json& doc) {
    Scenario s = parse_scenario(doc);
    KindResult kr;
    try {
        kr = detail::evaluate(s.kind, s.fields);
    } catch (const std::domain_error& e) {
        throw ValidationError(e.what());
    } catch (const numerics::BracketError& e) {
        throw SolverError(e.what());
    } catch (const numerics::ConvergenceError& e) {
        throw SolverError(e.what());
    } catch (const numerics::AccuracyError& e) {
        throw SolverError(e.what());
    }

    RunOutput out;
    out.summary["kind"] = s.kind;
    ojson inputs;
    for (const auto& [k, v] : s.fields) inputs[k] = v;
    out.summary["inputs"] = inputs;
    out.summary["results"] = kr.results;
    out.summary["notes"] = kr.notes;

    if (s.kind == "hole_filling") {
        hole::Sampling sampling;
        sampling.n_samples = static_cast<int>(
            detail::get_number_or(json(s.fields), "n_samples", 200));
        sampling.R_floor = s.fields.contains("R_floor") ? s.fields.at("R_floor") : 0.0;
        try {
            auto traj = hole::simulate(detail::make_hole(s.fields), sampling);
            std::string csv = "t_s,R_m,V_m_per_s\n";
            for (const auto& p : traj.samples)
                csv += fmt(p.t) + "," + fmt(p.r) + "," + fmt(p.v) + "\n";
            out.trajectory_csv = csv;
            out.summary["terminal_event"] =
                traj.terminal_event == TerminalEvent::bounce ? "bounce" : "reached_target";
        } catch (const std::exception& e) {
            throw SolverError(e.what());
        }
    } else if (s.kind == "shell_collapse") {
        shell::Sampling sampling;
        sampling.n_samples = static_cast<int>(
            detail::get_number_or(json(s.fields), "n_samples", 200));
        sampling.R_floor = s.fields.contains("R_floor") ? s.fields.at("R_floor") : 0.0;
        auto sc = detail::make_shell(s.fields);
        if (sampling.R_floor == 0.0 && sc.C == 0.0) sampling.R_floor = 1e-3 * sc.R_start;
        try {
            auto traj = shell::proper_time_trajectory(sc, sampling);
            std::string csv = "tau_proper_m,R_m,dR_dtau\n";
            for (const auto& p : traj.samples)
                csv += fmt(p.t) + "," + fmt(p.r) + "," + fmt(p.v) + "\n";
            out.trajectory_csv = csv;
            const char* ev = traj.terminal_event == TerminalEvent::bounce ? "bounce"
                             : traj.terminal_event == TerminalEvent::step_limit
                                 ? "step_limit"
                                 : "reached_target";
            out.summary["terminal_event"] = ev;
            if (traj.terminal_event == TerminalEvent::step_limit)
                out.summary["notes"].push_back(
                    "trajectory is partial: the proper-time step underflowed before the "
                    "stop radius (extreme scale separation)");
        } catch (const std::domain_error& e) {
            throw ValidationError(e.what());
        } catch (const std::exception& e) {
            throw SolverError(e.what());
        }
    }
    return out;
}

/// One CSV row per sweep point: swept value, then the kind's summary
/// scalars, then an "error" column (empty on success; points that fail are
/// recorded and the sweep continues).
inline std::string sweep_csv(const json& doc) {
    Scenario s = parse_scenario(doc);
    if (s.sweep.is_null() || s.sweep.empty())
        throw ValidationError("sweep subcommand needs a \"sweep\" block in the scenario");
    std::string field = s.sweep.at("field").get<std::string>();
    std::string scale = s.sweep.value("scale", "linear");
    double from = s.sweep.at("from").get<double>();
    double to = s.sweep.at("to").get<double>();
    long count = s.sweep.at("count").get<long>();

    // column set comes from a probe evaluation at the base point
    KindResult probe;
    try {
        probe = detail::evaluate(s.kind, s.fields);
    } catch (const std::exception& e) {
        throw ValidationError(std::string("sweep base scenario is not evaluable: ") + e.what());
    }

    std::string csv = field;
    for (auto it = probe.results.begin(); it != probe.results.end(); ++it)
        csv += "," + it.key();
    csv += ",error\n";

    for (long i = 0; i < count; ++i) {
        double u = static_cast<double>(i) / static_cast<double>(count - 1);
        double value = scale == "log" ? std::exp(std::log(from) + u * (std::log(to) - std::log(from)))
                                      : from + u * (to - from);
        auto fields = s.fields;
        fields[field] = value;
        csv += fmt(value);
        try {
            auto kr = detail::evaluate(s.kind, fields);
            for (auto it = kr.results.begin(); it != kr.results.end(); ++it) {
                if (it.value().is_string())
                    csv += "," + it.value().get<std::string>();
                else
                    csv += "," + fmt(it.value().get<double>());
            }
            csv += ",\n";
        } catch (const std::exception& e) {
            for (std::size_t k = 0; k < probe.results.size(); ++k) csv += ",";
            csv += ",";
            csv += e.what();
            csv += "\n";
        }
    }
    return csv;
}

inline ojson constants_json() {
    ojson j;
    j["hbar_J_s"] = units::hbar;
    j["c_m_per_s"] = units::c;
    j["G_m3_per_kg_s2"] = units::G;
    j["hbar_c_J_m"] = units::hbar_c;
    j["planck_area_m2"] = units::planck_area;
    j["casimir_coefficient"] = units::casimir_coefficient;
    j["casimir_constant_si_J_m"] = units::casimir_constant_si();
    j["casimir_constant_geometric_m2"] = units::casimir_constant_geometric();
    return j;
}

} // namespace casimir::scenario
