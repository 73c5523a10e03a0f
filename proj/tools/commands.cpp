#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include "gsp/applications.hpp"
#include "gsp/error.hpp"
#include "gsp/rng.hpp"
#include "gsp/serialize.hpp"

namespace gsp::cli {

namespace {

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
}

std::string joined(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

WeightedGraph sample_connected_graph(const RunConfig& cfg, Rng& rng) {
    std::vector<std::array<double, 2>> pos(static_cast<std::size_t>(cfg.n));
    for (int attempt = 0; attempt < cfg.max_graph_retries; ++attempt) {
        for (auto& p : pos) {
            p[0] = rng.uniform01();
            p[1] = rng.uniform01();
        }
        try {
            return build_geometric_graph(pos, cfg.sigma, cfg.kappa);
        } catch (const DisconnectedError&) {
        }
    }
    throw DisconnectedError("no connected graph in " + std::to_string(cfg.max_graph_retries) +
                            " attempts (n=" + std::to_string(cfg.n) +
                            ", sigma=" + std::to_string(cfg.sigma) +
                            ", kappa=" + std::to_string(cfg.kappa) + ")");
}

/// The experiment's field signal at the sensor positions.
Signal quadratic_field(const WeightedGraph& g) {
    if (!g.has_positions())
        throw ConfigError("this task needs vertex positions; the graph file has none");
    Signal f(static_cast<std::size_t>(g.num_vertices()));
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto& p = g.positions()[i];
        f[i] = p[0] * p[0] + p[1] * p[1] - 1.0;
    }
    return f;
}

} // namespace

void apply_config_json(const nlohmann::json& j, RunConfig& cfg) {
    if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "task") cfg.task = value.get<std::string>();
            else if (key == "graph") cfg.graph_path = value.get<std::string>();
            else if (key == "n") cfg.n = value.get<int>();
            else if (key == "sigma") cfg.sigma = value.get<double>();
            else if (key == "kappa") cfg.kappa = value.get<double>();
            else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
            else if (key == "noise_std") cfg.noise_std = value.get<double>();
            else if (key == "t") cfg.t = value.get<double>();
            else if (key == "tau") cfg.tau = value.get<double>();
            else if (key == "r") cfg.r = value.get<int>();
            else if (key == "scales") cfg.scales = value.get<int>();
            else if (key == "order") cfg.order = value.get<int>();
            else if (key == "mu") cfg.mu = value.get<double>();
            else if (key == "labeled_fraction") cfg.labeled_fraction = value.get<double>();
            else if (key == "trials") cfg.trials = value.get<int>();
            else if (key == "max_graph_retries") cfg.max_graph_retries = value.get<int>();
            else if (key == "out") cfg.out_dir = value.get<std::string>();
            else if (key == "ledger") {
                const auto s = value.get<std::string>();
                if (s == "full") cfg.ledger = LedgerMode::full;
                else if (s == "counts") cfg.ledger = LedgerMode::counts;
                else throw ConfigError("ledger must be 'full' or 'counts', got '" + s + "'");
            } else {
                throw ConfigError("unknown config key '" + key + "'");
            }
        } catch (const nlohmann::json::exception& ex) {
            throw ConfigError("config key '" + key + "': " + ex.what());
        }
    }
}

void cmd_generate(const RunConfig& cfg, std::ostream& log) {
    if (cfg.n < 2) throw ConfigError("graph generation needs n >= 2");
    ensure_out_dir(cfg.out_dir);
    Rng rng(cfg.seed);
    WeightedGraph g = sample_connected_graph(cfg, rng);
    const std::string path = joined(cfg.out_dir, "graph.json");
    save_graph(g, path);
    log << "generated graph: vertices=" << g.num_vertices() << " edges=" << g.num_edges()
        << " lambda_max_bound=" << lambda_max_bound(g) << " file=" << path << "\n";
}

void cmd_run(const RunConfig& cfg, std::ostream& log) {
    if (cfg.graph_path.empty())
        throw ConfigError("run needs a graph file (--graph or \"graph\" in the config)");
    if (cfg.task.empty())
        throw ConfigError("run needs a task: smooth, tikhonov, classify, or wavelet");
    ensure_out_dir(cfg.out_dir);
    WeightedGraph g = load_graph(cfg.graph_path);

    SimOptions opt;
    opt.ledger = cfg.ledger;
    RoundTrace trace;
    nlohmann::ordered_json output;
    output["task"] = cfg.task;

    if (cfg.task == "smooth" || cfg.task == "tikhonov" || cfg.task == "wavelet") {
        Signal y = quadratic_field(g);
        Rng rng(cfg.seed);
        for (double& v : y) v += rng.normal(0.0, cfg.noise_std);

        Signal result;
        if (cfg.task == "smooth") {
            result = smooth_heat(g, y, cfg.t, cfg.order, opt, &trace);
        } else if (cfg.task == "tikhonov") {
            result = denoise_tikhonov(g, y, cfg.tau, cfg.r, cfg.order, opt, &trace);
        } else {
            IstaOptions io;
            io.mu = cfg.mu;
            io.sim = opt;
            io.trace = &trace;
            auto [signal, state] = wavelet_denoise_ista(g, y, cfg.scales, cfg.order, io);
            result = std::move(signal);
            output["iterations"] = state.iterations;
            output["converged"] = state.converged;
            output["objective"] = state.objective_history.back();
        }
        output["input"] = y;
        output["values"] = result;
    } else if (cfg.task == "classify") {
        if (!(cfg.labeled_fraction > 0.0 && cfg.labeled_fraction <= 1.0))
            throw ConfigError("labeled_fraction must lie in (0, 1]");
        if (!g.has_positions())
            throw ConfigError("classify needs vertex positions; the graph file has none");
        // Ground truth splits the square at x = 0.5; every stride-th node
        // keeps its label, the rest are 0 (unlabeled).
        const int stride = std::max(1, static_cast<int>(std::lround(1.0 / cfg.labeled_fraction)));
        std::vector<int> labels(static_cast<std::size_t>(g.num_vertices()), 0);
        for (int v = 0; v < g.num_vertices(); v += stride)
            labels[static_cast<std::size_t>(v)] = g.positions()[static_cast<std::size_t>(v)][0] >= 0.5 ? 1 : -1;
        std::vector<int> out =
            classify_semisupervised(g, labels, cfg.tau, cfg.r, cfg.order, opt, &trace);
        output["input"] = labels;
        output["labels"] = out;
    } else {
        throw ConfigError("unknown task '" + cfg.task +
                          "' (expected smooth, tikhonov, classify, or wavelet)");
    }

    const std::string out_path = joined(cfg.out_dir, "output.json");
    const std::string trace_path = joined(cfg.out_dir, "trace.jsonl");
    save_json(output, out_path);
    save_trace(trace, trace_path);
    log << "task=" << cfg.task << " vertices=" << g.num_vertices() << " edges=" << g.num_edges()
        << " messages=" << trace.total_messages << " scalars=" << trace.total_scalars
        << " output=" << out_path << " trace=" << trace_path << "\n";
}

void cmd_experiment(const RunConfig& cfg, std::ostream& log) {
    ensure_out_dir(cfg.out_dir);
    ExperimentConfig ec;
    ec.num_nodes = cfg.n;
    ec.sigma = cfg.sigma;
    ec.kappa = cfg.kappa;
    ec.noise_std = cfg.noise_std;
    ec.tau = cfg.tau;
    ec.r = cfg.r;
    ec.order = cfg.order;
    ec.trials = cfg.trials;
    ec.seed = cfg.seed;
    ec.max_graph_retries = cfg.max_graph_retries;

    DenoiseReport report = run_denoising_experiment(ec);

    const std::string report_path = joined(cfg.out_dir, "report.json");
    const std::string csv_path = joined(cfg.out_dir, "trials.csv");
    save_json(report_to_json(report), report_path);
    std::ostringstream csv;
    write_report_csv(report, csv);
    save_text(csv.str(), csv_path);
    log << "trials=" << report.trials << " mse_noisy=" << report.mse_noisy
        << " mse_denoised=" << report.mse_denoised << " report=" << report_path
        << " csv=" << csv_path << "\n";
}

} // namespace gsp::cli
