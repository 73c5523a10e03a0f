#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gsp/distsim.hpp"
#include "gsp/graph.hpp"
#include "gsp/operators.hpp"
#include "gsp/rng.hpp"

namespace gsp {

/// Shrinkage map: 0 when |z| <= threshold, otherwise z pulled toward zero by
/// the threshold.
double soft_threshold(double z, double threshold);

/// Distributed heat-kernel smoothing: one forward pass with g(lambda) =
/// exp(-t lambda). Pass a trace pointer to capture the message audit.
Signal smooth_heat(const WeightedGraph& g, const Signal& y, double t, int order,
                   const SimOptions& opt = {}, RoundTrace* trace = nullptr);

/// Distributed Tikhonov denoising: one forward pass with the multiplier
/// tau / (tau + 2 lambda^r), the closed-form minimizer of
/// tau/2 ||f - y||^2 + f^T L^r f.
Signal denoise_tikhonov(const WeightedGraph& g, const Signal& y, double tau, int r, int order,
                        const SimOptions& opt = {}, RoundTrace* trace = nullptr);

/// Semi-supervised binary labeling: labels are +1/-1 with 0 for unlabeled
/// nodes; the label signal is Tikhonov-denoised and each node takes the sign
/// of its score, with exact zeros mapping to +1.
std::vector<int> classify_semisupervised(const WeightedGraph& g, const std::vector<int>& labels,
                                         double tau, int r, int order, const SimOptions& opt = {},
                                         RoundTrace* trace = nullptr);

/// The spectral-graph-wavelet union (scaling kernel + num_scales band-pass
/// kernels) expanded to the given order against this graph's spectrum bound.
ChebOperator make_wavelet_operator(const WeightedGraph& g, int num_scales, int order);

struct IstaOptions {
    double mu = 0.1;                 // uniform coefficient weight
    std::vector<double> mu_weights;  // optional per-coefficient weights, length (J+1)*N
    int max_iters = 500;
    double tol = 1e-6;               // relative iterate-change stopping threshold
    double step_override = 0.0;      // > 0 replaces the default step (still checked)
    SimOptions sim;
    RoundTrace* trace = nullptr;     // optional sink collecting every pass's audit
};

/// Terminal state of an ISTA run.
struct IstaState {
    StackedCoefficients iterate;           // a at termination
    double tau_step = 0.0;                 // gradient step actually used
    std::vector<double> mu;                // per-coefficient weights, length (J+1)*N
    std::vector<double> objective_history; // F(a_0), ..., F(a_final), nonincreasing
    int iterations = 0;
    bool converged = false;
    std::uint64_t total_messages = 0;
    std::uint64_t total_scalars = 0;
};

/// Wavelet-domain lasso denoising solved by distributed iterative soft
/// thresholding. Minimizes 1/2 ||y - W*a||^2 + sum_i mu_i |a_i| over wavelet
/// coefficients a, starting from a = 0. The analysis pass W y runs once and
/// is stored; every iteration then costs one adjoint pass (payload J+1) plus
/// one forward pass (payload 1). Returns the synthesized signal W* a_final
/// and the terminal state.
std::pair<Signal, IstaState> wavelet_denoise_ista(const WeightedGraph& g, const Signal& y,
                                                  int num_scales, int order,
                                                  const IstaOptions& opt = {});

struct ExperimentConfig {
    int num_nodes = 500;
    double sigma = 0.074;
    double kappa = 0.600;
    double noise_std = 0.5;
    double tau = 1.0;
    int r = 1;
    int order = 20;
    int trials = 100;
    std::uint64_t seed = 1;
    int max_graph_retries = 50;          // per trial, before giving up
    ExecPolicy policy = ExecPolicy::parallel;  // across trials only
    std::string rng_algorithm = std::string(Rng::algorithm);
};

struct TrialResult {
    int trial;
    std::uint64_t seed;
    double mse_noisy;
    double mse_denoised;
};

struct DenoiseReport {
    double mse_noisy = 0.0;    // mean over trials
    double mse_denoised = 0.0; // mean over trials
    int trials = 0;
    std::vector<TrialResult> per_trial;
    ExperimentConfig config;
};

/// The randomized sensor-denoising experiment: per trial, scatter num_nodes
/// points uniformly in the unit square, build the thresholded-Gaussian graph
/// (resampling positions while disconnected), evaluate f0(n) = x^2 + y^2 - 1,
/// add Gaussian noise, denoise with the distributed Tikhonov pass, and record
/// both MSEs against f0. Trials are independently seeded and may run in
/// parallel; the report is identical either way.
DenoiseReport run_denoising_experiment(const ExperimentConfig& cfg);

} // namespace gsp
