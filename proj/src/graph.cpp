#include "gsp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gsp {

namespace {

void check_connected(int n, const std::vector<int>& offsets, const std::vector<Neighbor>& adj) {
    if (n == 0) throw GraphError("graph has no vertices");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int i = offsets[u]; i < offsets[u + 1]; ++i) {
            const int v = adj[static_cast<std::size_t>(i)].id;
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    if (reached != n)
        throw DisconnectedError("graph is disconnected (" + std::to_string(reached) + " of " +
                                std::to_string(n) + " vertices reachable)");
}

} // namespace

WeightedGraph::WeightedGraph(int num_vertices, std::vector<Edge> edges,
                             std::vector<std::array<double, 2>> positions)
    : n_(num_vertices), edges_(std::move(edges)), positions_(std::move(positions)) {
    if (n_ <= 0) throw GraphError("graph must have at least one vertex");
    if (!positions_.empty() && static_cast<int>(positions_.size()) != n_)
        throw GraphError("positions length does not match vertex count");

    for (auto& e : edges_) {
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.u < 0 || e.v >= n_) throw GraphError("edge endpoint out of range");
        if (e.u == e.v) throw GraphError("self-loops are not allowed");
        if (!(e.w > 0.0) || !std::isfinite(e.w)) throw GraphError("edge weights must be finite and positive");
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    for (std::size_t i = 1; i < edges_.size(); ++i)
        if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
            throw GraphError("duplicate edge");

    offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (const auto& e : edges_) {
        ++offsets_[e.u + 1];
        ++offsets_[e.v + 1];
    }
    for (int v = 0; v < n_; ++v) offsets_[v + 1] += offsets_[v];
    adj_.resize(edges_.size() * 2);
    std::vector<int> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges_) {
        adj_[static_cast<std::size_t>(cursor[e.u]++)] = {e.v, e.w};
        adj_[static_cast<std::size_t>(cursor[e.v]++)] = {e.u, e.w};
    }
    for (int v = 0; v < n_; ++v)
        std::sort(adj_.begin() + offsets_[v], adj_.begin() + offsets_[v + 1],
                  [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });

    degrees_.assign(static_cast<std::size_t>(n_), 0.0);
    for (int v = 0; v < n_; ++v)
        for (const auto& nb : neighbors(v)) degrees_[v] += nb.weight;

    check_connected(n_, offsets_, adj_);
}

WeightedGraph build_geometric_graph(const std::vector<std::array<double, 2>>& positions,
                                    double sigma, double kappa, ThresholdMode mode) {
    if (positions.size() < 2) throw GraphError("geometric graph needs at least two points");
    if (!(sigma > 0.0)) throw GraphError("sigma must be positive");
    if (!(kappa > 0.0)) throw GraphError("kappa must be positive");

    const int n = static_cast<int>(positions.size());
    const double inv = 1.0 / (2.0 * sigma * sigma);
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double dx = positions[i][0] - positions[j][0];
            const double dy = positions[i][1] - positions[j][1];
            const double d2 = dx * dx + dy * dy;
            const double w = std::exp(-d2 * inv);
            const bool keep = mode == ThresholdMode::weight ? w >= kappa
                                                            : std::sqrt(d2) <= kappa;
            if (keep) edges.push_back({i, j, w});
        }
    }
    return WeightedGraph(n, std::move(edges), positions);
}

Laplacian::Laplacian(const WeightedGraph& g)
    : n_(g.num_vertices()), degrees_(g.degrees()) {
    offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (int v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + g.degree_count(v);
    adj_.reserve(static_cast<std::size_t>(offsets_[n_]));
    for (int v = 0; v < n_; ++v)
        for (const auto& nb : g.neighbors(v)) adj_.push_back(nb);
}

void Laplacian::apply(const Signal& in, Signal& out, ExecPolicy policy) const {
    if (static_cast<int>(in.size()) != n_) throw DimensionError("Laplacian::apply: signal length mismatch");
    out.resize(static_cast<std::size_t>(n_));
    par::for_each_index(n_, policy, [&](int v) {
        double acc = degrees_[v] * in[v];
        for (int i = offsets_[v]; i < offsets_[v + 1]; ++i) {
            const auto& nb = adj_[static_cast<std::size_t>(i)];
            acc -= nb.weight * in[nb.id];
        }
        out[v] = acc;
    });
}

void Laplacian::apply_serial(const Signal& in, Signal& out) const {
    apply(in, out, ExecPolicy::serial);
}

double lambda_max_bound(const WeightedGraph& g) {
    if (g.num_edges() == 0) throw GraphError("lambda_max_bound needs at least one edge");
    double best = 0.0;
    for (const auto& e : g.edges()) best = std::max(best, g.degree(e.u) + g.degree(e.v));
    return best;
}

double smoothness(const WeightedGraph& g, const Signal& f, int r) {
    if (r < 1) throw Error("smoothness: r must be >= 1");
    if (static_cast<int>(f.size()) != g.num_vertices())
        throw DimensionError("smoothness: signal length mismatch");
    const Laplacian l(g);
    Signal cur = f;
    Signal next;
    for (int i = 0; i < r; ++i) {
        l.apply(cur, next);
        std::swap(cur, next);
    }
    double acc = 0.0;
    for (int v = 0; v < g.num_vertices(); ++v) acc += f[v] * cur[v];
    return acc;
}

} // namespace gsp
