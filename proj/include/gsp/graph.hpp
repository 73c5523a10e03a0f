#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "gsp/error.hpp"
#include "gsp/parallel.hpp"

namespace gsp {

/// Vertex signal. Spectral-domain vectors (graph Fourier coefficients) reuse
/// this type; the owning operation documents which domain it is in.
using Signal = std::vector<double>;

/// Undirected edge, stored once with u < v and weight > 0.
struct Edge {
    int u;
    int v;
    double w;
};

struct Neighbor {
    int id;
    double weight;
};

/// How build_geometric_graph applies the threshold kappa.
///   weight:   keep edge (i,j) iff exp(-d(i,j)^2 / (2 sigma^2)) >= kappa
///   distance: keep edge (i,j) iff d(i,j) <= kappa
/// The weight reading is the default; with sigma=0.074, kappa=0.600 it
/// connects sensors closer than ~0.075.
enum class ThresholdMode { weight, distance };

/// Undirected weighted graph over vertices 0..N-1. Connected by construction:
/// the constructor rejects disconnected inputs with DisconnectedError so that
/// random-graph callers can resample. Adjacency is kept as sorted neighbor
/// lists per vertex (CSR), which is what both the Theta(|E|) matrix-vector
/// kernels and the per-node simulator view need.
///
/// Immutable after construction; safe to share across threads.
class WeightedGraph {
public:
    WeightedGraph(int num_vertices, std::vector<Edge> edges,
                  std::vector<std::array<double, 2>> positions = {});

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    /// Edges with u < v, sorted lexicographically.
    const std::vector<Edge>& edges() const { return edges_; }

    /// Neighbors of v, ascending by id.
    std::span<const Neighbor> neighbors(int v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }

    int degree_count(int v) const { return offsets_[v + 1] - offsets_[v]; }

    /// Weighted degree d(v), the sum of incident edge weights.
    double degree(int v) const { return degrees_[v]; }
    const std::vector<double>& degrees() const { return degrees_; }

    bool has_positions() const { return !positions_.empty(); }
    const std::vector<std::array<double, 2>>& positions() const { return positions_; }

private:
    int n_;
    std::vector<Edge> edges_;
    std::vector<int> offsets_;      // n_+1 CSR offsets
    std::vector<Neighbor> adj_;     // 2|E| entries
    std::vector<double> degrees_;
    std::vector<std::array<double, 2>> positions_;
};

/// Thresholded-Gaussian-kernel graph on 2-D sensor positions: candidate edge
/// weight exp(-d^2 / (2 sigma^2)), kept per the threshold mode. Positions are
/// stored on the graph. Coincident points get weight 1 edges.
/// Throws GraphError for fewer than two points, DisconnectedError when the
/// result is not connected.
WeightedGraph build_geometric_graph(const std::vector<std::array<double, 2>>& positions,
                                    double sigma, double kappa,
                                    ThresholdMode mode = ThresholdMode::weight);

/// Non-normalized Laplacian L = D - A of a weighted graph. Owns its CSR copy.
/// (L f)(m) = sum over neighbors n of A_{m,n} (f(m) - f(n)); rows sum to zero.
class Laplacian {
public:
    explicit Laplacian(const WeightedGraph& g);

    int size() const { return n_; }
    double diagonal(int v) const { return degrees_[v]; }
    const std::vector<double>& degrees() const { return degrees_; }

    std::span<const Neighbor> neighbors(int v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }

    /// out = L * in. Parallel over rows; bit-identical to apply_serial because
    /// row writes are disjoint and each row accumulates in neighbor-id order.
    void apply(const Signal& in, Signal& out, ExecPolicy policy = ExecPolicy::parallel) const;

    /// Serial reference for apply(); kept for tests and benchmarks.
    void apply_serial(const Signal& in, Signal& out) const;

    Signal apply(const Signal& in, ExecPolicy policy = ExecPolicy::parallel) const {
        Signal out(static_cast<std::size_t>(n_));
        apply(in, out, policy);
        return out;
    }

private:
    int n_;
    std::vector<int> offsets_;
    std::vector<Neighbor> adj_;
    std::vector<double> degrees_;
};

inline Laplacian laplacian(const WeightedGraph& g) { return Laplacian(g); }

/// Upper bound on the largest Laplacian eigenvalue:
/// max over edges (m,n) of d(m) + d(n). Throws GraphError on edgeless graphs.
double lambda_max_bound(const WeightedGraph& g);

/// f^T L^r f by repeated sparse application of L (L^r is never formed).
/// Nonnegative; zero exactly when f is constant (r=1, connected graph).
double smoothness(const WeightedGraph& g, const Signal& f, int r);

} // namespace gsp
