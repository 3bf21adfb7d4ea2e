#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "gsqg/velocity.hpp"

namespace gsqg::cli {

using json = nlohmann::ordered_json;

// Everything a run depends on. Serialises to and from the JSON config file; a report embeds the
// config it was produced from, so (config, seed) reproduces it.
struct RunConfig {
    std::string command;

    double alpha = 0.25;
    double beta = 0.5;
    QuadConfig quad;

    // lemmas
    double grid_lo = 0.05, grid_hi = 0.25, grid_step = 0.05;

    // scenarios
    std::string scenario = "blowup";  // blowup | illposed-low | illposed-high
    double eps = 0.05;
    double eps_prime = 0.15;
    double smoothing = 0.0;  // 0 -> eps / 2
    double h = 0.025;
    double box = 8.0;        // lattice side for blow-up runs
    double T = 0.0;          // 0 -> 0.1 T_eps (blowup) or 0.1 (shear)
    double dt = 0.002;
    std::string mode = "recomputed";  // frozen | recomputed
    int probes = 64;
    int snapshots = 20;

    // ill-posed data
    double cap_a = 0.5;
    int n_max = 4;
    double gamma = 5.0;
    int n0 = 3;
    std::vector<int> shear_n{3, 4};

    // velocity probe
    double x1 = 1.0, x2 = 1.0;

    // random draws
    std::uint64_t seed = 1;
    std::int64_t lemma41_samples = 100000;
    int identity_draws = 100;

    std::string out;  // report path ("" -> stdout)
};

json to_json(const RunConfig& c);
RunConfig config_from_json(const json& j, RunConfig base = {});

// Per-check record; every report entry carries the statement it checks.
struct Check {
    std::string name;
    bool pass = false;
    std::string anchor;
    json values = json::object();
};

json to_json(const Check& c);

struct Outcome {
    json report;
    int status = 0;  // 0 all pass, 1 a check failed, 3 numerical non-convergence
};

// Exit codes shared by the CLI.
inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_numerical = 3;

Outcome run_lemmas(const RunConfig& c);
Outcome run_thresholds(const RunConfig& c);
Outcome run_velocity(const RunConfig& c);
Outcome run_simulate(const RunConfig& c);
Outcome run_illposed(const RunConfig& c);
Outcome run_verify_all(const RunConfig& c);

// Dispatch on c.command; throws ValidationError for an unknown command.
Outcome run(const RunConfig& c);

// Stable text form of a report (two-space indent, trailing newline).
std::string dump(const json& report);

}  // namespace gsqg::cli
