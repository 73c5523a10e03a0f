#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gsp/graph.hpp"
#include "gsp/operators.hpp"

namespace gsp {

/// One simulator message. Receiver is always a graph neighbor of the sender;
/// payload length is 1 for the forward/Gram protocols and eta for the adjoint.
struct Message {
    int sender;
    int receiver;
    int round;
    std::vector<double> payload;
};

enum class LedgerMode {
    counts,   // per-round aggregates only
    full      // additionally retain every Message
};

struct RoundRecord {
    int round;
    std::uint64_t messages;              // messages exchanged this round
    std::uint64_t scalars;               // payload entries exchanged this round
    std::uint64_t cumulative_messages;
    std::uint64_t cumulative_scalars;
};

/// Audited message ledger of a simulation run. Counts are exact integers
/// derived from the per-round validated destination lists; in full mode the
/// ledger length equals total_messages by construction.
struct RoundTrace {
    std::vector<RoundRecord> rounds;
    std::vector<Message> ledger;         // empty unless LedgerMode::full
    std::uint64_t total_messages = 0;
    std::uint64_t total_scalars = 0;
};

struct SimOptions {
    LedgerMode ledger = LedgerMode::counts;
    ExecPolicy policy = ExecPolicy::parallel;
};

/// How a node folds coefficient rows into outputs.
///   per_row: one recurrence lane, one accumulator per coefficient row
///            (forward protocol: every multiplier taps the same Tbar_k(L)f).
///   summed:  one lane per coefficient row, single accumulator
///            (adjoint protocol: blocks advance together, rounds batch one
///            length-eta vector per directed edge).
enum class AccumMode { per_row, summed };

/// The per-node state machine of the distributed protocols. A node is built
/// from exactly the knowledge the protocol grants it: its id, its component
/// of the input, its neighbor ids and incident edge weights, and the shared
/// read-only coefficient table with the spectrum bound. It never sees the
/// graph, the global signal, or any eigenpair; the simulator talks to it only
/// through outbound()/local_recurrence_step().
class ChebNode {
public:
    ChebNode(int id, std::vector<double> initial, std::vector<int> neighbor_ids,
             std::vector<double> neighbor_weights, const ChebOperator* shared, AccumMode mode);

    int id() const { return id_; }
    int lanes() const { return lanes_; }

    /// Values broadcast to every neighbor in round k (1-based):
    /// round 1 carries the initial values (Tbar_0), round k carries Tbar_{k-1}.
    std::span<const double> outbound(int k) const;

    /// Where this node sends each round: its neighbors, ascending.
    const std::vector<int>& destinations() const { return neighbor_ids_; }

    /// Consumes the round-k inbox (lanes() values per neighbor, in ascending
    /// neighbor order) and stores Tbar_k through the shifted recurrence:
    ///   k = 1:  (1/alpha) sum_{m in N(n) u n} L_{n,m} v_m  -  v_n
    ///   k >= 2: (2/alpha) sum_{m in N(n) u n} L_{n,m} v_m  -  2 v_n  -  prev_n
    /// then folds the new values into the output accumulators with the
    /// round-k coefficients. Throws ProtocolError on a short inbox or an
    /// out-of-order round.
    void local_recurrence_step(int k, std::span<const double> inbox);

    /// Output accumulators; final after order() rounds have been absorbed.
    std::span<const double> outputs() const { return acc_; }

private:
    int id_;
    int lanes_;
    double alpha_;
    double degree_;
    std::vector<int> neighbor_ids_;        // sorted ascending
    std::vector<double> neighbor_weights_; // aligned with neighbor_ids_
    const ChebOperator* shared_;
    AccumMode mode_;
    int next_round_ = 1;
    std::vector<double> t_prev_, t_cur_, t_next_;  // lanes_ values each
    std::vector<double> acc_;
};

/// Runs the forward protocol: after order() synchronous rounds every node n
/// holds its eta stacked outputs, assembled here into block-major layout.
/// Exactly 2 * order * |E| messages of payload length 1 are exchanged.
std::pair<StackedCoefficients, RoundTrace> run_forward(const WeightedGraph& g,
                                                       const ChebOperator& op, const Signal& f,
                                                       const SimOptions& opt = {});

/// Adjoint protocol: node n starts with a_j(n) for every block j and ends
/// with the adjoint output at n. 2 * order * |E| messages of length eta.
std::pair<Signal, RoundTrace> run_adjoint(const WeightedGraph& g, const ChebOperator& op,
                                          const StackedCoefficients& a,
                                          const SimOptions& opt = {});

/// Gram protocol (adjoint-of-forward in one pass): the forward machine run on
/// the degree-2*order product expansion. 4 * order * |E| messages of length 1.
std::pair<Signal, RoundTrace> run_gram(const WeightedGraph& g, const ChebOperator& op,
                                       const Signal& f, const SimOptions& opt = {});

namespace detail {
/// Validates one node's declared destinations against the graph: every send
/// must target a neighbor, once. Throws ProtocolError otherwise.
void check_destinations(const WeightedGraph& g, int sender, std::span<const int> destinations);
} // namespace detail

} // namespace gsp
