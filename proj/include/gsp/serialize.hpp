#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "gsp/applications.hpp"
#include "gsp/chebyshev.hpp"
#include "gsp/distsim.hpp"
#include "gsp/graph.hpp"
#include "gsp/operators.hpp"

namespace gsp {

/// Graph on disk: {"n": N, "edges": [[u, v, w], ...], "positions": [[x, y], ...]}
/// with 0-based vertex ids; "positions" is omitted when the graph has none.
nlohmann::ordered_json graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const nlohmann::json& j);

/// Expansion on disk: {"alpha": a, "m": order, "coeffs": [c_0 .. c_m]}.
nlohmann::ordered_json expansion_to_json(const ChebExpansion& e);
ChebExpansion expansion_from_json(const nlohmann::json& j);

/// Stacked vector as a flat array plus its block shape.
nlohmann::ordered_json stacked_to_json(const StackedCoefficients& a);
StackedCoefficients stacked_from_json(const nlohmann::json& j);

/// Message trace as JSON lines: in full-ledger mode one
/// {"round","sender","receiver","payload"} record per message, then one
/// {"round","messages","scalars"} record per round, and a final summary
/// record {"rounds","total_messages","total_scalars"}.
void write_trace_jsonl(const RoundTrace& t, std::ostream& os);

nlohmann::ordered_json report_to_json(const DenoiseReport& r);

/// Per-trial table with header trial,seed,mse_noisy,mse_denoised.
void write_report_csv(const DenoiseReport& r, std::ostream& os);

/// Whole-file helpers. Throw IoError when the path cannot be opened or, for
/// readers, parsed.
void save_json(const nlohmann::ordered_json& j, const std::string& path);
nlohmann::json load_json(const std::string& path);
void save_text(const std::string& text, const std::string& path);

void save_graph(const WeightedGraph& g, const std::string& path);
WeightedGraph load_graph(const std::string& path);
void save_trace(const RoundTrace& t, const std::string& path);

} // namespace gsp
