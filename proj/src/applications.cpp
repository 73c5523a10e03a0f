#include "gsp/applications.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "gsp/chebyshev.hpp"
#include "gsp/error.hpp"
#include "gsp/parallel.hpp"

namespace gsp {

double soft_threshold(double z, double threshold) {
    if (threshold < 0.0) throw ConfigError("soft threshold must be nonnegative");
    if (std::abs(z) <= threshold) return 0.0;
    return z > 0.0 ? z - threshold : z + threshold;
}

namespace {

void add_trace(RoundTrace* sink, const RoundTrace& piece) {
    if (sink == nullptr) return;
    sink->rounds.insert(sink->rounds.end(), piece.rounds.begin(), piece.rounds.end());
    sink->ledger.insert(sink->ledger.end(), piece.ledger.begin(), piece.ledger.end());
    sink->total_messages += piece.total_messages;
    sink->total_scalars += piece.total_scalars;
}

Signal forward_single(const WeightedGraph& g, const Multiplier& m, const Signal& y, int order,
                      const SimOptions& opt, RoundTrace* trace) {
    MultiplierUnion u;
    u.multipliers.push_back(m);
    ChebOperator op = make_cheb_operator(u, order, lambda_max_bound(g));
    auto [stacked, tr] = run_forward(g, op, y, opt);
    add_trace(trace, tr);
    auto b = stacked.block(0);
    return Signal(b.begin(), b.end());
}

} // namespace

Signal smooth_heat(const WeightedGraph& g, const Signal& y, double t, int order,
                   const SimOptions& opt, RoundTrace* trace) {
    return forward_single(g, multiplier_heat(t), y, order, opt, trace);
}

Signal denoise_tikhonov(const WeightedGraph& g, const Signal& y, double tau, int r, int order,
                        const SimOptions& opt, RoundTrace* trace) {
    return forward_single(g, multiplier_tikhonov(tau, r), y, order, opt, trace);
}

std::vector<int> classify_semisupervised(const WeightedGraph& g, const std::vector<int>& labels,
                                         double tau, int r, int order, const SimOptions& opt,
                                         RoundTrace* trace) {
    if (static_cast<int>(labels.size()) != g.num_vertices())
        throw DimensionError("label vector length does not match graph size");
    bool any_labeled = false;
    for (int v : labels) {
        if (v != -1 && v != 0 && v != 1)
            throw ConfigError("labels must be +1, -1, or 0 for unlabeled");
        if (v != 0) any_labeled = true;
    }
    if (!any_labeled) throw ConfigError("at least one node must carry a +1 or -1 label");

    Signal y(labels.begin(), labels.end());
    Signal score = denoise_tikhonov(g, y, tau, r, order, opt, trace);
    std::vector<int> out(score.size());
    for (std::size_t n = 0; n < score.size(); ++n) out[n] = score[n] >= 0.0 ? 1 : -1;
    return out;
}

ChebOperator make_wavelet_operator(const WeightedGraph& g, int num_scales, int order) {
    const double bound = lambda_max_bound(g);
    MultiplierUnion u;
    u.multipliers = sgwt_kernels(num_scales, bound);
    return make_cheb_operator(u, order, bound);
}

namespace {

double lasso_objective(const Signal& y, const Signal& synthesis,
                       const std::vector<double>& a, const std::vector<double>& mu) {
    double fit = 0.0;
    for (std::size_t n = 0; n < y.size(); ++n) {
        const double d = y[n] - synthesis[n];
        fit += d * d;
    }
    double penalty = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) penalty += mu[i] * std::abs(a[i]);
    return 0.5 * fit + penalty;
}

} // namespace

std::pair<Signal, IstaState> wavelet_denoise_ista(const WeightedGraph& g, const Signal& y,
                                                  int num_scales, int order,
                                                  const IstaOptions& opt) {
    const int n = g.num_vertices();
    if (static_cast<int>(y.size()) != n)
        throw DimensionError("input signal length does not match graph size");
    if (opt.max_iters < 1) throw ConfigError("max_iters must be at least 1");
    if (!(opt.tol >= 0.0)) throw ConfigError("tol must be nonnegative");

    ChebOperator op = make_wavelet_operator(g, num_scales, order);
    const int eta = op.num_blocks();
    const std::size_t dim = static_cast<std::size_t>(eta) * static_cast<std::size_t>(n);

    const double norm_bound = operator_norm_bound(op);
    double step = 1.9 / norm_bound;
    if (opt.step_override > 0.0) step = opt.step_override;
    if (!(step > 0.0) || !(step < 2.0 / norm_bound))
        throw ConfigError("ISTA step " + std::to_string(step) +
                          " violates the convergence condition step < 2 / " +
                          std::to_string(norm_bound));

    std::vector<double> mu;
    if (!opt.mu_weights.empty()) {
        if (opt.mu_weights.size() != dim)
            throw DimensionError("mu_weights must have one entry per wavelet coefficient");
        mu = opt.mu_weights;
    } else {
        mu.assign(dim, opt.mu);
    }
    for (double m : mu)
        if (!(m >= 0.0)) throw ConfigError("coefficient weights must be nonnegative");

    IstaState state;
    state.tau_step = step;
    state.mu = mu;
    state.iterate = StackedCoefficients::zeros(eta, n);

    auto absorb = [&state, &opt](const RoundTrace& tr) {
        state.total_messages += tr.total_messages;
        state.total_scalars += tr.total_scalars;
        add_trace(opt.trace, tr);
    };

    // Analysis coefficients of the data, computed once and stored.
    auto [wy, wy_trace] = run_forward(g, op, y, opt.sim);
    absorb(wy_trace);

    auto check_objective = [&state](double obj) {
        if (!std::isfinite(obj)) throw Error("lasso objective is not finite");
        if (!state.objective_history.empty()) {
            const double prev = state.objective_history.back();
            if (obj > prev + 1e-12 * (1.0 + std::abs(prev)))
                throw Error("lasso objective increased between iterations");
        }
        state.objective_history.push_back(obj);
    };

    StackedCoefficients next = StackedCoefficients::zeros(eta, n);
    for (int it = 1; it <= opt.max_iters; ++it) {
        // Synthesis of the current iterate; doubles as the data for the
        // objective value at a_{it-1}.
        auto [synth, adj_trace] = run_adjoint(g, op, state.iterate, opt.sim);
        absorb(adj_trace);
        check_objective(lasso_objective(y, synth, state.iterate.values, mu));

        auto [wwa, fwd_trace] = run_forward(g, op, synth, opt.sim);
        absorb(fwd_trace);

        double change_sq = 0.0, norm_sq = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            const double z = state.iterate.values[i] + step * (wy.values[i] - wwa.values[i]);
            const double ai = soft_threshold(z, mu[i] * step);
            const double d = ai - state.iterate.values[i];
            change_sq += d * d;
            norm_sq += ai * ai;
            next.values[i] = ai;
        }
        std::swap(state.iterate.values, next.values);
        state.iterations = it;
        if (std::sqrt(change_sq) <= opt.tol * std::max(std::sqrt(norm_sq), 1e-30)) {
            state.converged = true;
            break;
        }
    }

    // Final synthesis pass: the output signal, and the objective at the
    // terminal iterate to close out the history.
    auto [out, out_trace] = run_adjoint(g, op, state.iterate, opt.sim);
    absorb(out_trace);
    check_objective(lasso_objective(y, out, state.iterate.values, mu));

    return {std::move(out), std::move(state)};
}

namespace {

TrialResult run_trial(const ExperimentConfig& cfg, int trial) {
    const std::uint64_t seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(trial));
    Rng rng(seed);
    const std::size_t n = static_cast<std::size_t>(cfg.num_nodes);

    std::optional<WeightedGraph> g;
    std::vector<std::array<double, 2>> pos(n);
    for (int attempt = 0; attempt < cfg.max_graph_retries && !g; ++attempt) {
        for (auto& p : pos) {
            p[0] = rng.uniform01();
            p[1] = rng.uniform01();
        }
        try {
            g.emplace(build_geometric_graph(pos, cfg.sigma, cfg.kappa));
        } catch (const DisconnectedError&) {
        }
    }
    if (!g)
        throw DisconnectedError("trial " + std::to_string(trial) + " produced no connected graph in " +
                                std::to_string(cfg.max_graph_retries) + " attempts");

    Signal f0(n), noisy(n);
    for (std::size_t i = 0; i < n; ++i) {
        f0[i] = pos[i][0] * pos[i][0] + pos[i][1] * pos[i][1] - 1.0;
        noisy[i] = f0[i] + rng.normal(0.0, cfg.noise_std);
    }

    // Trials parallelize above this call, so the simulator itself stays serial.
    SimOptions sim;
    sim.policy = ExecPolicy::serial;
    Signal denoised = denoise_tikhonov(*g, noisy, cfg.tau, cfg.r, cfg.order, sim);

    double mse_noisy = 0.0, mse_denoised = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dn = noisy[i] - f0[i];
        const double dd = denoised[i] - f0[i];
        mse_noisy += dn * dn;
        mse_denoised += dd * dd;
    }
    mse_noisy /= static_cast<double>(n);
    mse_denoised /= static_cast<double>(n);
    return TrialResult{trial, seed, mse_noisy, mse_denoised};
}

} // namespace

DenoiseReport run_denoising_experiment(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw ConfigError("experiment needs at least one trial");
    if (cfg.num_nodes < 2) throw ConfigError("experiment needs at least two nodes");
    if (!(cfg.noise_std >= 0.0)) throw ConfigError("noise standard deviation must be nonnegative");
    if (cfg.max_graph_retries < 1) throw ConfigError("max_graph_retries must be at least 1");
    if (cfg.rng_algorithm != Rng::algorithm)
        throw ConfigError("unknown rng algorithm '" + cfg.rng_algorithm + "', expected '" +
                          std::string(Rng::algorithm) + "'");

    DenoiseReport report;
    report.config = cfg;
    report.trials = cfg.trials;
    report.per_trial.resize(static_cast<std::size_t>(cfg.trials));

    par::for_each_index(cfg.trials, cfg.policy, [&](int t) {
        report.per_trial[static_cast<std::size_t>(t)] = run_trial(cfg, t);
    });

    double sum_noisy = 0.0, sum_denoised = 0.0;
    for (const auto& tr : report.per_trial) {
        sum_noisy += tr.mse_noisy;
        sum_denoised += tr.mse_denoised;
    }
    report.mse_noisy = sum_noisy / static_cast<double>(cfg.trials);
    report.mse_denoised = sum_denoised / static_cast<double>(cfg.trials);
    return report;
}

} // namespace gsp
