#include "gsp/serialize.hpp"

#include <fstream>
#include <sstream>

#include "gsp/error.hpp"

namespace gsp {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json graph_to_json(const WeightedGraph& g) {
    ordered_json j;
    j["n"] = g.num_vertices();
    auto edges = ordered_json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.u, e.v, e.w});
    j["edges"] = std::move(edges);
    if (g.has_positions()) {
        auto pos = ordered_json::array();
        for (const auto& p : g.positions()) pos.push_back({p[0], p[1]});
        j["positions"] = std::move(pos);
    }
    return j;
}

WeightedGraph graph_from_json(const json& j) {
    try {
        const int n = j.at("n").get<int>();
        std::vector<Edge> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 3)
                throw IoError("graph edge entries must be [u, v, w] triples");
            edges.push_back(Edge{e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
        }
        std::vector<std::array<double, 2>> positions;
        if (j.contains("positions")) {
            for (const auto& p : j.at("positions")) {
                if (!p.is_array() || p.size() != 2)
                    throw IoError("graph position entries must be [x, y] pairs");
                positions.push_back({p[0].get<double>(), p[1].get<double>()});
            }
        }
        return WeightedGraph(n, std::move(edges), std::move(positions));
    } catch (const json::exception& ex) {
        throw IoError(std::string("malformed graph JSON: ") + ex.what());
    }
}

ordered_json expansion_to_json(const ChebExpansion& e) {
    ordered_json j;
    j["alpha"] = e.alpha;
    j["m"] = e.order();
    j["coeffs"] = e.coeffs;
    return j;
}

ChebExpansion expansion_from_json(const json& j) {
    try {
        ChebExpansion e;
        e.alpha = j.at("alpha").get<double>();
        e.coeffs = j.at("coeffs").get<std::vector<double>>();
        const int m = j.at("m").get<int>();
        if (m + 1 != static_cast<int>(e.coeffs.size()))
            throw IoError("expansion order field disagrees with coefficient count");
        if (e.coeffs.size() < 2) throw IoError("expansion needs at least order 1");
        if (!(e.alpha > 0.0)) throw IoError("expansion alpha must be positive");
        return e;
    } catch (const json::exception& ex) {
        throw IoError(std::string("malformed expansion JSON: ") + ex.what());
    }
}

ordered_json stacked_to_json(const StackedCoefficients& a) {
    ordered_json j;
    j["num_blocks"] = a.num_blocks;
    j["block_size"] = a.block_size;
    j["values"] = a.values;
    return j;
}

StackedCoefficients stacked_from_json(const json& j) {
    try {
        StackedCoefficients a;
        a.num_blocks = j.at("num_blocks").get<int>();
        a.block_size = j.at("block_size").get<int>();
        a.values = j.at("values").get<std::vector<double>>();
        if (a.num_blocks < 1 || a.block_size < 1 ||
            a.values.size() != static_cast<std::size_t>(a.num_blocks) *
                                   static_cast<std::size_t>(a.block_size))
            throw IoError("stacked vector shape disagrees with value count");
        return a;
    } catch (const json::exception& ex) {
        throw IoError(std::string("malformed stacked-vector JSON: ") + ex.what());
    }
}

void write_trace_jsonl(const RoundTrace& t, std::ostream& os) {
    std::size_t next_msg = 0;
    for (const RoundRecord& r : t.rounds) {
        while (next_msg < t.ledger.size() && t.ledger[next_msg].round == r.round) {
            const Message& m = t.ledger[next_msg++];
            ordered_json j;
            j["round"] = m.round;
            j["sender"] = m.sender;
            j["receiver"] = m.receiver;
            j["payload"] = m.payload;
            os << j.dump() << '\n';
        }
        ordered_json j;
        j["round"] = r.round;
        j["messages"] = r.messages;
        j["scalars"] = r.scalars;
        os << j.dump() << '\n';
    }
    ordered_json summary;
    summary["rounds"] = t.rounds.size();
    summary["total_messages"] = t.total_messages;
    summary["total_scalars"] = t.total_scalars;
    os << summary.dump() << '\n';
}

ordered_json report_to_json(const DenoiseReport& r) {
    ordered_json j;
    j["mse_noisy"] = r.mse_noisy;
    j["mse_denoised"] = r.mse_denoised;
    j["trials"] = r.trials;
    ordered_json cfg;
    cfg["num_nodes"] = r.config.num_nodes;
    cfg["sigma"] = r.config.sigma;
    cfg["kappa"] = r.config.kappa;
    cfg["noise_std"] = r.config.noise_std;
    cfg["tau"] = r.config.tau;
    cfg["r"] = r.config.r;
    cfg["order"] = r.config.order;
    cfg["trials"] = r.config.trials;
    cfg["seed"] = r.config.seed;
    cfg["rng"] = r.config.rng_algorithm;
    j["config"] = std::move(cfg);
    auto seeds = ordered_json::array();
    auto noisy = ordered_json::array();
    auto denoised = ordered_json::array();
    for (const TrialResult& t : r.per_trial) {
        seeds.push_back(t.seed);
        noisy.push_back(t.mse_noisy);
        denoised.push_back(t.mse_denoised);
    }
    j["trial_seeds"] = std::move(seeds);
    j["trial_mse_noisy"] = std::move(noisy);
    j["trial_mse_denoised"] = std::move(denoised);
    return j;
}

void write_report_csv(const DenoiseReport& r, std::ostream& os) {
    os << "trial,seed,mse_noisy,mse_denoised\n";
    for (const TrialResult& t : r.per_trial) {
        // json value formatting gives shortest round-trip doubles, the same
        // representation the report file uses.
        os << t.trial << ',' << t.seed << ',' << json(t.mse_noisy).dump() << ','
           << json(t.mse_denoised).dump() << '\n';
    }
}

void save_json(const ordered_json& j, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    os << j.dump(2) << '\n';
    if (!os) throw IoError("failed writing '" + path + "'");
}

json load_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open '" + path + "'");
    try {
        return json::parse(is);
    } catch (const json::exception& ex) {
        throw IoError("cannot parse '" + path + "': " + ex.what());
    }
}

void save_text(const std::string& text, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    os << text;
    if (!os) throw IoError("failed writing '" + path + "'");
}

void save_graph(const WeightedGraph& g, const std::string& path) {
    save_json(graph_to_json(g), path);
}

WeightedGraph load_graph(const std::string& path) { return graph_from_json(load_json(path)); }

void save_trace(const RoundTrace& t, const std::string& path) {
    std::ostringstream ss;
    write_trace_jsonl(t, ss);
    save_text(ss.str(), path);
}

} // namespace gsp
