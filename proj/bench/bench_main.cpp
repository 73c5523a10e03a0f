// Timing comparison of the serial reference kernels against the OpenMP path:
// Laplacian apply, operator application, and a full simulator pass. Also
// reports the max abs difference between the two paths, which must be 0.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "gsp/applications.hpp"
#include "gsp/chebyshev.hpp"
#include "gsp/distsim.hpp"
#include "gsp/graph.hpp"
#include "gsp/operators.hpp"
#include "gsp/parallel.hpp"
#include "gsp/rng.hpp"

using namespace gsp;

namespace {

WeightedGraph grid_graph(int w, int h) {
    std::vector<Edge> edges;
    auto id = [w](int x, int y) { return y * w + x; };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (x + 1 < w) edges.push_back({id(x, y), id(x + 1, y), 1.0});
            if (y + 1 < h) edges.push_back({id(x, y), id(x, y + 1), 1.0});
        }
    return WeightedGraph(w * h, std::move(edges));
}

template <class F>
double best_ms(F&& f, int reps) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

void row(const char* name, double serial_ms, double parallel_ms, double diff) {
    std::printf("%-28s %10.3f ms %10.3f ms   x%.2f   max|diff| %.1e\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms, diff);
}

} // namespace

int main() {
    std::printf("threads: %d\n", par::max_threads());

    {
        const WeightedGraph g = grid_graph(300, 300);
        const Laplacian l(g);
        Rng rng(7);
        Signal f(static_cast<std::size_t>(g.num_vertices()));
        for (double& v : f) v = rng.normal();
        Signal out_s(f.size()), out_p(f.size());
        const double ts = best_ms([&] { l.apply(f, out_s, ExecPolicy::serial); }, 20);
        const double tp = best_ms([&] { l.apply(f, out_p, ExecPolicy::parallel); }, 20);
        row("laplacian apply 300x300", ts, tp, max_diff(out_s, out_p));

        MultiplierUnion u;
        u.multipliers = sgwt_kernels(3, lambda_max_bound(g));
        const ChebOperator op = make_cheb_operator(u, 20, lambda_max_bound(g));
        StackedCoefficients a_s, a_p;
        const double cs = best_ms([&] { a_s = apply_cheb(op, l, f, ExecPolicy::serial); }, 5);
        const double cp = best_ms([&] { a_p = apply_cheb(op, l, f, ExecPolicy::parallel); }, 5);
        row("apply_cheb M=20 eta=4", cs, cp, max_diff(a_s.values, a_p.values));
    }

    {
        const WeightedGraph g = grid_graph(100, 100);
        Rng rng(11);
        Signal f(static_cast<std::size_t>(g.num_vertices()));
        for (double& v : f) v = rng.normal();
        MultiplierUnion u;
        u.multipliers.push_back(multiplier_tikhonov(1.0, 1));
        const ChebOperator op = make_cheb_operator(u, 20, lambda_max_bound(g));
        SimOptions so_s, so_p;
        so_s.policy = ExecPolicy::serial;
        so_p.policy = ExecPolicy::parallel;
        StackedCoefficients r_s, r_p;
        const double ss = best_ms([&] { r_s = run_forward(g, op, f, so_s).first; }, 3);
        const double sp = best_ms([&] { r_p = run_forward(g, op, f, so_p).first; }, 3);
        row("run_forward 100x100 M=20", ss, sp, max_diff(r_s.values, r_p.values));
    }

    return 0;
}
