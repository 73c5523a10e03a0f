#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "gsp/distsim.hpp"
#include "gsp/error.hpp"
#include "gsp/rng.hpp"
#include "gsp/serialize.hpp"

#include "test_helpers.hpp"

using namespace gsp;
using namespace gsp::testing;
using nlohmann::json;

namespace {

std::filesystem::path scratch_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "gsp_serialize_test";
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("graph serialization round-trips edges and positions") {
    const std::vector<std::array<double, 2>> pos = {{0.0, 0.0}, {0.03, 0.0}, {0.03, 0.04}};
    const auto g = build_geometric_graph(pos, 0.074, 0.6);
    const auto j = graph_to_json(g);
    CHECK(j.at("n") == 3);
    CHECK(j.contains("positions"));

    const auto back = graph_from_json(json::parse(j.dump()));
    CHECK(back.num_vertices() == g.num_vertices());
    CHECK(back.num_edges() == g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) {
        CHECK(back.edges()[e].u == g.edges()[e].u);
        CHECK(back.edges()[e].v == g.edges()[e].v);
        CHECK(back.edges()[e].w == g.edges()[e].w);
    }
    REQUIRE(back.has_positions());
    for (int v = 0; v < 3; ++v) {
        CHECK(back.positions()[v][0] == pos[v][0]);
        CHECK(back.positions()[v][1] == pos[v][1]);
    }
}

TEST_CASE("graph without positions omits the field") {
    const auto g = path_graph(4);
    const auto j = graph_to_json(g);
    CHECK(!j.contains("positions"));
    const auto back = graph_from_json(json::parse(j.dump()));
    CHECK(!back.has_positions());
    CHECK(back.num_edges() == 3);
}

TEST_CASE("malformed graph JSON raises IoError") {
    CHECK_THROWS_AS(graph_from_json(json::parse(R"({"edges": []})")), IoError);
    CHECK_THROWS_AS(graph_from_json(json::parse(R"({"n": 2, "edges": [[0, 1]]})")), IoError);
    CHECK_THROWS_AS(graph_from_json(json::parse(R"({"n": "two", "edges": []})")), IoError);
    CHECK_THROWS_AS(
        graph_from_json(json::parse(R"({"n": 2, "edges": [[0, 1, 1.0]], "positions": [[0]]})")),
        IoError);
    // structurally valid JSON describing an invalid graph passes through to
    // the graph constructor's own validation
    CHECK_THROWS_AS(graph_from_json(json::parse(R"({"n": 2, "edges": [[0, 1, -1.0]]})")),
                    GraphError);
}

TEST_CASE("expansion serialization round-trips") {
    const auto e = cheb_coeffs(multiplier_heat(1.0), 8, 3.0);
    const auto j = expansion_to_json(e);
    CHECK(j.at("m") == 8);
    const auto back = expansion_from_json(json::parse(j.dump()));
    CHECK(back.alpha == e.alpha);
    CHECK(back.coeffs == e.coeffs);
}

TEST_CASE("malformed expansion JSON raises IoError") {
    CHECK_THROWS_AS(expansion_from_json(json::parse(R"({"alpha": 1.0, "coeffs": [1, 2]})")),
                    IoError);
    CHECK_THROWS_AS(
        expansion_from_json(json::parse(R"({"alpha": 1.0, "m": 3, "coeffs": [1, 2]})")), IoError);
    CHECK_THROWS_AS(expansion_from_json(json::parse(R"({"alpha": 1.0, "m": 0, "coeffs": [1]})")),
                    IoError);
    CHECK_THROWS_AS(
        expansion_from_json(json::parse(R"({"alpha": -1.0, "m": 1, "coeffs": [1, 2]})")), IoError);
}

TEST_CASE("stacked vector serialization round-trips") {
    auto a = StackedCoefficients::zeros(2, 3);
    for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] = 0.5 * static_cast<double>(i);
    const auto back = stacked_from_json(json::parse(stacked_to_json(a).dump()));
    CHECK(back.num_blocks == 2);
    CHECK(back.block_size == 3);
    CHECK(back.values == a.values);

    CHECK_THROWS_AS(
        stacked_from_json(json::parse(R"({"num_blocks": 2, "block_size": 3, "values": [1]})")),
        IoError);
    CHECK_THROWS_AS(
        stacked_from_json(json::parse(R"({"num_blocks": 0, "block_size": 1, "values": []})")),
        IoError);
}

TEST_CASE("trace stream in counts mode lists rounds and a summary") {
    Rng rng(311);
    const auto g = random_geometric_graph(rng, 10);
    const auto op =
        make_cheb_operator({{multiplier_heat(1.0)}}, 5, lambda_max_bound(g));
    const auto [out, trace] = run_forward(g, op, random_signal(rng, 10));

    std::ostringstream ss;
    write_trace_jsonl(trace, ss);
    std::istringstream is(ss.str());
    std::vector<json> lines;
    for (std::string line; std::getline(is, line);) lines.push_back(json::parse(line));

    REQUIRE(lines.size() == 6);  // five rounds plus the summary
    for (int k = 0; k < 5; ++k) {
        CHECK(lines[k].at("round") == k + 1);
        CHECK(lines[k].at("messages") == 2 * g.num_edges());
        CHECK(lines[k].at("scalars") == 2 * g.num_edges());
        CHECK(!lines[k].contains("sender"));
    }
    CHECK(lines[5].at("rounds") == 5);
    CHECK(lines[5].at("total_messages") == trace.total_messages);
    CHECK(lines[5].at("total_scalars") == trace.total_scalars);
}

TEST_CASE("trace stream in full mode interleaves messages with their round") {
    Rng rng(313);
    const auto g = random_geometric_graph(rng, 8);
    const auto op =
        make_cheb_operator({{multiplier_heat(1.0)}}, 3, lambda_max_bound(g));
    SimOptions opt;
    opt.ledger = LedgerMode::full;
    const auto [out, trace] = run_forward(g, op, random_signal(rng, 8), opt);

    std::ostringstream ss;
    write_trace_jsonl(trace, ss);
    std::istringstream is(ss.str());
    std::vector<json> lines;
    for (std::string line; std::getline(is, line);) lines.push_back(json::parse(line));

    const std::size_t expected =
        static_cast<std::size_t>(trace.total_messages) + trace.rounds.size() + 1;
    REQUIRE(lines.size() == expected);

    std::uint64_t messages_seen = 0;
    int rounds_seen = 0;
    int current_round = 1;
    for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
        const auto& l = lines[i];
        if (l.contains("sender")) {
            CHECK(l.at("round") == current_round);
            CHECK(l.at("payload").is_array());
            ++messages_seen;
        } else {
            CHECK(l.at("round") == current_round);
            ++rounds_seen;
            ++current_round;
        }
    }
    CHECK(messages_seen == trace.total_messages);
    CHECK(rounds_seen == static_cast<int>(trace.rounds.size()));

    // identical traces serialize to identical bytes
    std::ostringstream again;
    write_trace_jsonl(trace, again);
    CHECK(again.str() == ss.str());
}

TEST_CASE("experiment report serialization carries config and per-trial data") {
    ExperimentConfig cfg;
    cfg.num_nodes = 30;
    cfg.sigma = 0.4;
    cfg.kappa = 0.6;
    cfg.trials = 2;
    cfg.order = 10;
    cfg.seed = 77;
    const auto report = run_denoising_experiment(cfg);
    const auto j = report_to_json(report);

    CHECK(j.at("trials") == 2);
    CHECK(j.at("mse_noisy").get<double>() == report.mse_noisy);
    CHECK(j.at("mse_denoised").get<double>() == report.mse_denoised);
    CHECK(j.at("config").at("num_nodes") == 30);
    CHECK(j.at("config").at("seed") == 77);
    CHECK(j.at("config").at("rng") == "mt19937_64/polar");
    REQUIRE(j.at("trial_seeds").size() == 2);
    REQUIRE(j.at("trial_mse_noisy").size() == 2);
    REQUIRE(j.at("trial_mse_denoised").size() == 2);
    for (int t = 0; t < 2; ++t) {
        CHECK(j.at("trial_seeds")[t] == report.per_trial[t].seed);
        CHECK(j.at("trial_mse_noisy")[t].get<double>() == report.per_trial[t].mse_noisy);
    }

    // identical runs serialize to identical bytes
    const auto j2 = report_to_json(run_denoising_experiment(cfg));
    CHECK(j2.dump(2) == j.dump(2));
}

TEST_CASE("csv table round-trips every trial row") {
    ExperimentConfig cfg;
    cfg.num_nodes = 25;
    cfg.sigma = 0.4;
    cfg.trials = 3;
    cfg.order = 8;
    cfg.seed = 13;
    const auto report = run_denoising_experiment(cfg);

    std::ostringstream ss;
    write_report_csv(report, ss);
    std::istringstream is(ss.str());
    std::string line;
    REQUIRE(std::getline(is, line));
    CHECK(line == "trial,seed,mse_noisy,mse_denoised");
    int rows = 0;
    while (std::getline(is, line)) {
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        const auto c3 = line.find(',', c2 + 1);
        REQUIRE(c3 != std::string::npos);
        CHECK(std::stoi(line.substr(0, c1)) == rows);
        CHECK(std::stoull(line.substr(c1 + 1, c2 - c1 - 1)) == report.per_trial[rows].seed);
        // shortest-round-trip doubles parse back to the exact stored values
        CHECK(std::stod(line.substr(c2 + 1, c3 - c2 - 1)) == report.per_trial[rows].mse_noisy);
        CHECK(std::stod(line.substr(c3 + 1)) == report.per_trial[rows].mse_denoised);
        ++rows;
    }
    CHECK(rows == 3);
}

TEST_CASE("json file helpers round-trip and flag missing files") {
    const auto dir = scratch_dir();
    const auto path = (dir / "blob.json").string();
    nlohmann::ordered_json j;
    j["a"] = 1;
    j["b"] = {1.5, 2.5};
    save_json(j, path);
    const auto back = load_json(path);
    CHECK(back.at("a") == 1);
    CHECK(back.at("b")[1] == 2.5);

    CHECK_THROWS_AS(load_json((dir / "does_not_exist.json").string()), IoError);
    CHECK_THROWS_AS(save_json(j, (dir / "no_such_dir" / "x.json").string()), IoError);

    save_text("this is not json", path);
    CHECK_THROWS_AS(load_json(path), IoError);
}

TEST_CASE("graph and trace file helpers") {
    const auto dir = scratch_dir();
    Rng rng(317);
    const auto g = random_geometric_graph(rng, 9);

    const auto gpath = (dir / "graph.json").string();
    save_graph(g, gpath);
    const auto back = load_graph(gpath);
    CHECK(back.num_vertices() == 9);
    CHECK(back.num_edges() == g.num_edges());

    const auto op = make_cheb_operator({{multiplier_heat(1.0)}}, 4, lambda_max_bound(g));
    const auto [out, trace] = run_forward(g, op, random_signal(rng, 9));
    const auto tpath = (dir / "trace.jsonl").string();
    save_trace(trace, tpath);

    std::ifstream is(tpath);
    REQUIRE(is.good());
    int lines = 0;
    for (std::string line; std::getline(is, line);) ++lines;
    CHECK(lines == 5);  // four rounds plus the summary
}
