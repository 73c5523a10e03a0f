#include "gsp/distsim.hpp"

#include <algorithm>
#include <utility>

#include "gsp/error.hpp"
#include "gsp/parallel.hpp"

namespace gsp {

ChebNode::ChebNode(int id, std::vector<double> initial, std::vector<int> neighbor_ids,
                   std::vector<double> neighbor_weights, const ChebOperator* shared,
                   AccumMode mode)
    : id_(id),
      neighbor_ids_(std::move(neighbor_ids)),
      neighbor_weights_(std::move(neighbor_weights)),
      shared_(shared),
      mode_(mode) {
    if (shared_ == nullptr) throw ProtocolError("node requires a shared coefficient table");
    if (neighbor_ids_.size() != neighbor_weights_.size())
        throw DimensionError("neighbor id and weight lists differ in length");
    if (!std::is_sorted(neighbor_ids_.begin(), neighbor_ids_.end()))
        throw ProtocolError("neighbor ids must be sorted ascending");

    const int rows = shared_->num_blocks();
    lanes_ = (mode_ == AccumMode::summed) ? rows : 1;
    if (static_cast<int>(initial.size()) != lanes_)
        throw DimensionError("node initial state has wrong lane count");

    alpha_ = shared_->alpha();
    degree_ = 0.0;
    for (double w : neighbor_weights_) degree_ += w;

    t_cur_ = std::move(initial);  // Tbar_0 applied to the input is the input
    t_prev_.assign(lanes_, 0.0);
    t_next_.assign(lanes_, 0.0);

    // Every accumulator starts at the halved k = 0 term of its expansion.
    if (mode_ == AccumMode::per_row) {
        acc_.resize(rows);
        for (int r = 0; r < rows; ++r)
            acc_[r] = 0.5 * shared_->expansion(r).coeffs[0] * t_cur_[0];
    } else {
        acc_.assign(1, 0.0);
        for (int j = 0; j < rows; ++j)
            acc_[0] += 0.5 * shared_->expansion(j).coeffs[0] * t_cur_[j];
    }
}

std::span<const double> ChebNode::outbound(int k) const {
    if (k != next_round_)
        throw ProtocolError("node " + std::to_string(id_) + " asked to broadcast round " +
                            std::to_string(k) + " but expects round " +
                            std::to_string(next_round_));
    // Round k always broadcasts Tbar_{k-1}: the constructor placed Tbar_0 in
    // t_cur_, and each absorbed round leaves Tbar_k there.
    return t_cur_;
}

void ChebNode::local_recurrence_step(int k, std::span<const double> inbox) {
    if (k != next_round_)
        throw ProtocolError("node " + std::to_string(id_) + " received round " +
                            std::to_string(k) + " out of order (expects " +
                            std::to_string(next_round_) + ")");
    const std::size_t deg = neighbor_ids_.size();
    if (inbox.size() != deg * static_cast<std::size_t>(lanes_))
        throw ProtocolError("node " + std::to_string(id_) + " round " + std::to_string(k) +
                            " inbox holds " + std::to_string(inbox.size()) +
                            " scalars, expected " +
                            std::to_string(deg * static_cast<std::size_t>(lanes_)));

    for (int l = 0; l < lanes_; ++l) {
        // (L v)_n from local data: degree * v_n minus the weighted inbox.
        // Summation order matches the centralized Laplacian row product so the
        // two paths agree bit for bit.
        double lap = degree_ * t_cur_[l];
        for (std::size_t i = 0; i < deg; ++i)
            lap -= neighbor_weights_[i] * inbox[i * static_cast<std::size_t>(lanes_) + l];
        if (k == 1)
            t_next_[l] = lap / alpha_ - t_cur_[l];
        else
            t_next_[l] = 2.0 * (lap / alpha_) - 2.0 * t_cur_[l] - t_prev_[l];
    }
    std::swap(t_prev_, t_cur_);
    std::swap(t_cur_, t_next_);

    if (mode_ == AccumMode::per_row) {
        for (std::size_t r = 0; r < acc_.size(); ++r)
            acc_[r] += shared_->expansion(static_cast<int>(r)).coeffs[k] * t_cur_[0];
    } else {
        for (int j = 0; j < lanes_; ++j)
            acc_[0] += shared_->expansion(j).coeffs[k] * t_cur_[j];
    }
    ++next_round_;
}

namespace detail {

void check_destinations(const WeightedGraph& g, int sender, std::span<const int> destinations) {
    const auto& nbrs = g.neighbors(sender);
    if (destinations.size() != nbrs.size())
        throw ProtocolError("node " + std::to_string(sender) + " declared " +
                            std::to_string(destinations.size()) + " destinations but has " +
                            std::to_string(nbrs.size()) + " neighbors");
    for (std::size_t i = 0; i < nbrs.size(); ++i)
        if (destinations[i] != nbrs[i].id)
            throw ProtocolError("node " + std::to_string(sender) +
                                " addressed non-neighbor node " +
                                std::to_string(destinations[i]));
}

} // namespace detail

namespace {

/// Drives K synchronous rounds over one ChebNode per vertex and audits every
/// delivery. Neighbor payloads are snapshotted before any node absorbs them,
/// matching the barrier semantics of a synchronous network.
RoundTrace simulate(const WeightedGraph& g, std::vector<ChebNode>& nodes, int lanes,
                    int num_rounds, const SimOptions& opt) {
    const int n = g.num_vertices();
    const std::size_t w = static_cast<std::size_t>(lanes);

    // Flat inbox storage: node v's round inbox occupies deg(v) * lanes scalars
    // starting at inbox_off[v]. Offsets double as the per-round ledger layout.
    std::vector<std::size_t> inbox_off(static_cast<std::size_t>(n) + 1, 0);
    for (int v = 0; v < n; ++v)
        inbox_off[static_cast<std::size_t>(v) + 1] =
            inbox_off[v] + g.neighbors(v).size() * w;
    std::vector<double> snapshot(static_cast<std::size_t>(n) * w);
    std::vector<double> inbox(inbox_off.back());

    // Each round every node sends its whole (validated) destination list, so
    // the per-round message count is the sum of those list lengths: 2|E|.
    std::uint64_t round_messages = 0;
    for (int v = 0; v < n; ++v) round_messages += static_cast<std::uint64_t>(g.degree_count(v));
    const std::uint64_t round_scalars = round_messages * w;

    RoundTrace trace;
    trace.rounds.reserve(static_cast<std::size_t>(num_rounds));
    if (opt.ledger == LedgerMode::full)
        trace.ledger.reserve(static_cast<std::size_t>(num_rounds) * round_messages);

    for (int k = 1; k <= num_rounds; ++k) {
        // Broadcast phase: audit each sender's destination list, then freeze
        // its outbound payload.
        par::for_each_index(n, opt.policy, [&](int v) {
            const auto& dst = nodes[static_cast<std::size_t>(v)].destinations();
            detail::check_destinations(g, v, dst);
            auto payload = nodes[static_cast<std::size_t>(v)].outbound(k);
            std::copy(payload.begin(), payload.end(),
                      snapshot.begin() + static_cast<std::size_t>(v) * w);
        });

        // Delivery phase: each receiver assembles its inbox from the frozen
        // snapshots of its neighbors, in ascending sender order.
        par::for_each_index(n, opt.policy, [&](int v) {
            const auto& nbrs = g.neighbors(v);
            double* slot = inbox.data() + inbox_off[static_cast<std::size_t>(v)];
            for (std::size_t i = 0; i < nbrs.size(); ++i) {
                const double* src =
                    snapshot.data() + static_cast<std::size_t>(nbrs[i].id) * w;
                std::copy(src, src + w, slot + i * w);
            }
        });

        if (opt.ledger == LedgerMode::full) {
            for (int v = 0; v < n; ++v) {
                const auto& nbrs = g.neighbors(v);
                for (std::size_t i = 0; i < nbrs.size(); ++i) {
                    const double* src = inbox.data() +
                                        inbox_off[static_cast<std::size_t>(v)] + i * w;
                    trace.ledger.push_back(
                        Message{nbrs[i].id, v, k, std::vector<double>(src, src + w)});
                }
            }
        }

        // Absorb phase: every node advances its recurrence one step.
        par::for_each_index(n, opt.policy, [&](int v) {
            const std::size_t lo = inbox_off[static_cast<std::size_t>(v)];
            const std::size_t hi = inbox_off[static_cast<std::size_t>(v) + 1];
            nodes[static_cast<std::size_t>(v)].local_recurrence_step(
                k, std::span<const double>(inbox.data() + lo, hi - lo));
        });

        trace.total_messages += round_messages;
        trace.total_scalars += round_scalars;
        trace.rounds.push_back(RoundRecord{k, round_messages, round_scalars,
                                           trace.total_messages, trace.total_scalars});
    }
    return trace;
}

std::vector<int> neighbor_ids_of(const WeightedGraph& g, int v) {
    const auto& nbrs = g.neighbors(v);
    std::vector<int> ids(nbrs.size());
    for (std::size_t i = 0; i < nbrs.size(); ++i) ids[i] = nbrs[i].id;
    return ids;
}

std::vector<double> neighbor_weights_of(const WeightedGraph& g, int v) {
    const auto& nbrs = g.neighbors(v);
    std::vector<double> ws(nbrs.size());
    for (std::size_t i = 0; i < nbrs.size(); ++i) ws[i] = nbrs[i].weight;
    return ws;
}

} // namespace

std::pair<StackedCoefficients, RoundTrace> run_forward(const WeightedGraph& g,
                                                       const ChebOperator& op, const Signal& f,
                                                       const SimOptions& opt) {
    const int n = g.num_vertices();
    if (static_cast<int>(f.size()) != n)
        throw DimensionError("input signal length " + std::to_string(f.size()) +
                             " does not match graph size " + std::to_string(n));

    std::vector<ChebNode> nodes;
    nodes.reserve(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        nodes.emplace_back(v, std::vector<double>{f[static_cast<std::size_t>(v)]},
                           neighbor_ids_of(g, v), neighbor_weights_of(g, v), &op,
                           AccumMode::per_row);

    RoundTrace trace = simulate(g, nodes, 1, op.order(), opt);

    auto out = StackedCoefficients::zeros(op.num_blocks(), n);
    for (int v = 0; v < n; ++v) {
        auto acc = nodes[static_cast<std::size_t>(v)].outputs();
        for (int j = 0; j < op.num_blocks(); ++j) out.at(j, v) = acc[static_cast<std::size_t>(j)];
    }
    return {std::move(out), std::move(trace)};
}

std::pair<Signal, RoundTrace> run_adjoint(const WeightedGraph& g, const ChebOperator& op,
                                          const StackedCoefficients& a, const SimOptions& opt) {
    const int n = g.num_vertices();
    if (a.block_size != n)
        throw DimensionError("stacked block size " + std::to_string(a.block_size) +
                             " does not match graph size " + std::to_string(n));
    if (a.num_blocks != op.num_blocks())
        throw DimensionError("stacked vector has " + std::to_string(a.num_blocks) +
                             " blocks but the operator has " +
                             std::to_string(op.num_blocks()));

    std::vector<ChebNode> nodes;
    nodes.reserve(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        std::vector<double> initial(static_cast<std::size_t>(op.num_blocks()));
        for (int j = 0; j < op.num_blocks(); ++j)
            initial[static_cast<std::size_t>(j)] = a.at(j, v);
        nodes.emplace_back(v, std::move(initial), neighbor_ids_of(g, v),
                           neighbor_weights_of(g, v), &op, AccumMode::summed);
    }

    RoundTrace trace = simulate(g, nodes, op.num_blocks(), op.order(), opt);

    Signal out(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) out[static_cast<std::size_t>(v)] = nodes[static_cast<std::size_t>(v)].outputs()[0];
    return {std::move(out), std::move(trace)};
}

std::pair<Signal, RoundTrace> run_gram(const WeightedGraph& g, const ChebOperator& op,
                                       const Signal& f, const SimOptions& opt) {
    // The Gram pass is the forward machine driven by the single degree-2M
    // product expansion, so it runs 2M rounds of scalar payloads.
    ChebOperator gram({gram_coeffs(op)});
    auto [stacked, trace] = run_forward(g, gram, f, opt);
    Signal out(stacked.values.begin(), stacked.values.end());
    return {std::move(out), std::move(trace)};
}

} // namespace gsp
