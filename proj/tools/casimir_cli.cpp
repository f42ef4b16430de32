// Command-line front end: evaluates scenario files against the physics
// modules and writes JSON summaries plus CSV trajectories/sweeps.
//
// Exit codes: 0 success, 1 input validation error, 2 solver/numeric failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "casimir/scenario.hpp"

namespace fs = std::filesystem;
using casimir::scenario::json;

namespace {

json load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw casimir::scenario::ValidationError("cannot open scenario file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        // nlohmann reports the position inside what()
        throw casimir::scenario::ValidationError(std::string("malformed JSON: ") + e.what());
    }
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

int do_run(const std::string& scenario_path, const std::string& out_dir) {
    json doc = load_scenario(scenario_path);
    auto result = casimir::scenario::run_scenario(doc);
    fs::path dir(out_dir);
    fs::create_directories(dir);
    write_file(dir / "summary.json", result.summary.dump(2) + "\n");
    if (result.trajectory_csv)
        write_file(dir / "trajectory.csv", *result.trajectory_csv);
    std::cout << result.summary.dump(2) << "\n";
    return 0;
}

int do_sweep(const std::string& scenario_path, const std::string& out_file) {
    json doc = load_scenario(scenario_path);
    std::string csv = casimir::scenario::sweep_csv(doc);
    write_file(out_file, csv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Casimir-force scenarios: static balances, hole filling, shell collapse"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir = ".", out_file;

    auto* run = app.add_subcommand("run", "evaluate one scenario, write summary.json (+ trajectory.csv)");
    run->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("--out", out_dir, "output directory (default: .)");

    auto* sweep = app.add_subcommand("sweep", "run the scenario's sweep block, write a CSV");
    sweep->add_option("--scenario", scenario_path, "scenario JSON file with a sweep block")->required();
    sweep->add_option("--out", out_file, "output CSV path")->required();

    auto* constants = app.add_subcommand("constants", "print the pinned physical constants as JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return do_run(scenario_path, out_dir);
        if (sweep->parsed()) return do_sweep(scenario_path, out_file);
        if (constants->parsed()) {
            std::cout << casimir::scenario::constants_json().dump(2) << "\n";
            return 0;
        }
    } catch (const casimir::scenario::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const casimir::scenario::SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
