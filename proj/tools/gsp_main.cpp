#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "commands.hpp"
#include "gsp/error.hpp"
#include "gsp/serialize.hpp"

namespace {

/// Flag values as optionals: only flags the user actually passed override the
/// config file, which in turn overrides the built-in defaults.
struct Flags {
    std::optional<std::string> config, task, graph, out, ledger;
    std::optional<std::uint64_t> seed;
    std::optional<int> n, r, scales, order, trials, max_retries;
    std::optional<double> sigma, kappa, noise_std, t, tau, mu, labeled_fraction;
};

gsp::cli::RunConfig merge(const Flags& f) {
    gsp::cli::RunConfig cfg;
    if (f.config) gsp::cli::apply_config_json(gsp::load_json(*f.config), cfg);
    if (f.task) cfg.task = *f.task;
    if (f.graph) cfg.graph_path = *f.graph;
    if (f.out) cfg.out_dir = *f.out;
    if (f.seed) cfg.seed = *f.seed;
    if (f.n) cfg.n = *f.n;
    if (f.r) cfg.r = *f.r;
    if (f.scales) cfg.scales = *f.scales;
    if (f.order) cfg.order = *f.order;
    if (f.trials) cfg.trials = *f.trials;
    if (f.max_retries) cfg.max_graph_retries = *f.max_retries;
    if (f.sigma) cfg.sigma = *f.sigma;
    if (f.kappa) cfg.kappa = *f.kappa;
    if (f.noise_std) cfg.noise_std = *f.noise_std;
    if (f.t) cfg.t = *f.t;
    if (f.tau) cfg.tau = *f.tau;
    if (f.mu) cfg.mu = *f.mu;
    if (f.labeled_fraction) cfg.labeled_fraction = *f.labeled_fraction;
    if (f.ledger) cfg.ledger = (*f.ledger == "full") ? gsp::LedgerMode::full : gsp::LedgerMode::counts;
    return cfg;
}

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "JSON config file; flags override its values");
    cmd->add_option("--seed", f.seed, "PRNG seed (all outputs are deterministic in it)");
    cmd->add_option("--out", f.out, "output directory (created if missing)");
}

void add_graph_params(CLI::App* cmd, Flags& f) {
    cmd->add_option("--n", f.n, "number of vertices");
    cmd->add_option("--sigma", f.sigma, "Gaussian kernel width");
    cmd->add_option("--kappa", f.kappa, "edge-weight threshold");
    cmd->add_option("--max-graph-retries", f.max_retries,
                    "position resamples allowed before giving up on connectivity");
}

void add_operator_params(CLI::App* cmd, Flags& f) {
    cmd->add_option("--order", f.order, "Chebyshev approximation order M");
    cmd->add_option("--tau", f.tau, "Tikhonov regularization weight");
    cmd->add_option("--r", f.r, "Laplacian power in the Tikhonov penalty");
    cmd->add_option("--t", f.t, "heat-kernel time");
    cmd->add_option("--scales", f.scales, "wavelet band-pass scale count J");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distributed graph-signal processing via Chebyshev-approximated "
                 "spectral multipliers: graph generation, audited message-passing "
                 "runs, and the randomized denoising experiment."};
    app.require_subcommand(1);
    app.footer("Exit codes: 0 success; 1 invalid usage or configuration; 2 file I/O "
               "failure; 3 graph construction failure (including disconnection after "
               "the retry limit); 4 numeric or protocol failure.");

    Flags f;

    auto* cgen = app.add_subcommand(
        "generate", "Sample a connected thresholded-Gaussian graph and write graph.json");
    add_common(cgen, f);
    add_graph_params(cgen, f);

    auto* crun = app.add_subcommand(
        "run", "Run one task on a graph file; writes output.json and trace.jsonl");
    crun->add_option("task", f.task, "smooth | tikhonov | classify | wavelet");
    add_common(crun, f);
    add_operator_params(crun, f);
    crun->add_option("--graph", f.graph, "graph JSON file");
    crun->add_option("--noise-std", f.noise_std, "noise level added to the field signal");
    crun->add_option("--mu", f.mu, "lasso coefficient weight (wavelet task)");
    crun->add_option("--labeled-fraction", f.labeled_fraction,
                     "fraction of nodes keeping their label (classify task)");
    crun->add_option("--ledger", f.ledger, "trace detail: counts (default) or full")
        ->check(CLI::IsMember({"counts", "full"}));

    auto* cexp = app.add_subcommand(
        "experiment", "Randomized denoising experiment; writes report.json and trials.csv");
    add_common(cexp, f);
    add_graph_params(cexp, f);
    add_operator_params(cexp, f);
    cexp->add_option("--trials", f.trials, "number of independent trials");
    cexp->add_option("--noise-std", f.noise_std, "noise level added to the field signal");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        const gsp::cli::RunConfig cfg = merge(f);
        if (cgen->parsed()) gsp::cli::cmd_generate(cfg, std::cout);
        else if (crun->parsed()) gsp::cli::cmd_run(cfg, std::cout);
        else if (cexp->parsed()) gsp::cli::cmd_experiment(cfg, std::cout);
        return 0;
    } catch (const gsp::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const gsp::DimensionError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const gsp::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const gsp::GraphError& e) {
        std::cerr << "graph error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
