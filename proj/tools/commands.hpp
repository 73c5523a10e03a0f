#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "json.hpp"

#include "gsp/distsim.hpp"

namespace gsp::cli {

/// Everything a command needs, merged from defaults, an optional JSON config
/// file, and command-line flags (flags win).
struct RunConfig {
    std::string task;     // smooth | tikhonov | classify | wavelet (run only)
    std::string graph_path;

    int n = 500;
    double sigma = 0.074;
    double kappa = 0.600;
    std::uint64_t seed = 1;
    double noise_std = 0.5;

    double t = 1.0;       // heat-kernel time
    double tau = 1.0;     // Tikhonov weight
    int r = 1;            // Laplacian power
    int scales = 3;       // wavelet band-pass scales J
    int order = 20;       // Chebyshev order M
    double mu = 0.1;      // lasso weight
    double labeled_fraction = 0.1;

    int trials = 100;
    int max_graph_retries = 50;
    std::string out_dir = ".";
    LedgerMode ledger = LedgerMode::counts;
};

/// Applies recognized keys of a config file onto cfg. Unknown keys throw
/// ConfigError so typos do not silently run defaults.
void apply_config_json(const nlohmann::json& j, RunConfig& cfg);

/// Builds a thresholded-Gaussian graph from seeded uniform positions
/// (resampling while disconnected) and writes <out>/graph.json. Logs vertex,
/// edge, and spectrum-bound figures.
void cmd_generate(const RunConfig& cfg, std::ostream& log);

/// Runs one task against a graph file: writes <out>/output.json and
/// <out>/trace.jsonl, logs a summary with exact message totals.
void cmd_run(const RunConfig& cfg, std::ostream& log);

/// Full randomized denoising experiment: writes <out>/report.json and
/// <out>/trials.csv, logs the mean MSEs.
void cmd_experiment(const RunConfig& cfg, std::ostream& log);

} // namespace gsp::cli
