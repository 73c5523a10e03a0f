#include <cmath>
#include <vector>

#include "doctest.h"

#include "gsp/error.hpp"
#include "gsp/operators.hpp"
#include "gsp/rng.hpp"
#include "gsp/spectrum.hpp"

#include "test_helpers.hpp"

using namespace gsp;
using namespace gsp::testing;

namespace {

MultiplierUnion identity_union() { return {{multiplier_constant(1.0)}}; }

MultiplierUnion heat_tikhonov_union() {
    return {{multiplier_heat(1.0), multiplier_tikhonov(1.0, 1)}};
}

// Worst-case truncation error of the operator over the actual eigenvalues:
// sqrt(sum_j max_l |g~_j(lambda_l) - g_j(lambda_l)|^2). Scaled by ||f|| this
// bounds the approximation error of the stacked output.
double spectral_error_bound(const ChebOperator& op, const MultiplierUnion& u, const Spectrum& s) {
    double sum = 0.0;
    for (int j = 0; j < u.size(); ++j) {
        double worst = 0.0;
        for (double lambda : s.eigenvalues) {
            const double diff =
                std::abs(eval_expansion(op.expansion(j), lambda) - u.multipliers[j](lambda));
            worst = std::max(worst, diff);
        }
        sum += worst * worst;
    }
    return std::sqrt(sum);
}

} // namespace

TEST_CASE("exact application of the identity union returns the signal") {
    Rng rng(3);
    const auto g = random_geometric_graph(rng, 20);
    const auto s = spectrum(Laplacian(g));
    const auto f = random_signal(rng, 20);
    const auto out = apply_exact(identity_union(), s, f);
    REQUIRE(out.num_blocks == 1);
    REQUIRE(out.block_size == 20);
    for (int v = 0; v < 20; ++v) CHECK(std::abs(out.at(0, v) - f[v]) <= 1e-10);
}

TEST_CASE("exact application scales eigenvectors by the multiplier values") {
    Rng rng(11);
    const auto g = random_geometric_graph(rng, 18);
    const auto s = spectrum(Laplacian(g));
    const auto u = heat_tikhonov_union();
    for (int l : {0, 5, 17}) {
        const auto chi = eigenvector_signal(s, l);
        const auto out = apply_exact(u, s, chi);
        for (int j = 0; j < u.size(); ++j) {
            const double gain = u.multipliers[j](s.eigenvalues[l]);
            for (int v = 0; v < s.n; ++v)
                CHECK(std::abs(out.at(j, v) - gain * chi[v]) <= 1e-10);
        }
    }
}

TEST_CASE("exact heat diffusion on P3 matches the hand computation") {
    // P3 eigenpairs: (0, (1,1,1)/sqrt3), (1, (1,0,-1)/sqrt2), (3, (1,-2,1)/sqrt6).
    // For f = (1,0,0) the diffused value at node n is
    // sum_l exp(-lambda_l) chi_l(0) chi_l(n), written out per node below.
    const auto g = path_graph(3);
    const auto s = spectrum(Laplacian(g));
    const Signal f = {1.0, 0.0, 0.0};
    const MultiplierUnion u{{multiplier_heat(1.0)}};
    const auto out = apply_exact(u, s, f);
    const double e1 = std::exp(-1.0), e3 = std::exp(-3.0);
    CHECK(std::abs(out.at(0, 0) - (1.0 / 3.0 + e1 / 2.0 + e3 / 6.0)) <= 1e-12);
    CHECK(std::abs(out.at(0, 1) - (1.0 / 3.0 - e3 / 3.0)) <= 1e-12);
    CHECK(std::abs(out.at(0, 2) - (1.0 / 3.0 - e1 / 2.0 + e3 / 6.0)) <= 1e-12);
}

TEST_CASE("apply_exact validates the signal length") {
    const auto s = spectrum(Laplacian(path_graph(3)));
    CHECK_THROWS_AS(apply_exact(identity_union(), s, Signal(4, 0.0)), DimensionError);
}

TEST_CASE("recurrence basis on a constant signal alternates sign") {
    // L kills constants, so Tbar_k(L) f = Tbar_k at eigenvalue 0, which is
    // T_k(-1) = (-1)^k, applied to f.
    const auto g = path_graph(6);
    const Laplacian lap(g);
    const Signal f(6, 2.5);
    const auto basis = cheb_recurrence_apply(lap, lambda_max_bound(g) / 2.0, f, 5);
    REQUIRE(basis.size() == 6);
    for (int k = 0; k <= 5; ++k) {
        const double want = (k % 2 == 0 ? 2.5 : -2.5);
        for (double v : basis[k]) CHECK(std::abs(v - want) <= 1e-12);
    }
}

TEST_CASE("recurrence basis scales eigenvectors by shifted Chebyshev values") {
    Rng rng(41);
    const auto g = random_geometric_graph(rng, 16);
    const Laplacian lap(g);
    const auto s = spectrum(lap);
    const double alpha = lambda_max_bound(g) / 2.0;
    for (int l : {1, 8, 15}) {
        const auto chi = eigenvector_signal(s, l);
        const auto basis = cheb_recurrence_apply(lap, alpha, chi, 7);
        for (int k = 0; k <= 7; ++k) {
            const double gain = tbar(k, s.eigenvalues[l], alpha);
            for (int v = 0; v < 16; ++v)
                CHECK(std::abs(basis[k][v] - gain * chi[v]) <= 1e-9);
        }
    }
}

TEST_CASE("recurrence basis matches the spectral oracle on P3") {
    const auto g = path_graph(3);
    const Laplacian lap(g);
    const auto s = spectrum(lap);
    const double alpha = lambda_max_bound(g) / 2.0;
    const Signal f = {0.3, -1.1, 0.7};
    const auto basis = cheb_recurrence_apply(lap, alpha, f, 8);
    const auto fhat = gft(s, f);
    for (int k = 0; k <= 8; ++k) {
        Signal scaled(3);
        for (int l = 0; l < 3; ++l) scaled[l] = tbar(k, s.eigenvalues[l], alpha) * fhat[l];
        CHECK(max_abs_diff(basis[k], igft(s, scaled)) <= 1e-10);
    }
}

TEST_CASE("recurrence argument validation") {
    const Laplacian lap(path_graph(3));
    CHECK_THROWS_AS(cheb_recurrence_apply(lap, 1.0, Signal(2, 0.0), 3), DimensionError);
    CHECK_THROWS_AS(cheb_recurrence_apply(lap, 0.0, Signal(3, 0.0), 3), Error);
    CHECK_THROWS_AS(cheb_recurrence_apply(lap, 1.0, Signal(3, 0.0), 0), Error);
}

TEST_CASE("approximate identity application reproduces the signal") {
    Rng rng(7);
    const auto g = random_geometric_graph(rng, 24);
    const Laplacian lap(g);
    const auto op = make_cheb_operator(identity_union(), 10, lambda_max_bound(g));
    const auto f = random_signal(rng, 24);
    const auto out = apply_cheb(op, lap, f);
    for (int v = 0; v < 24; ++v) CHECK(std::abs(out.at(0, v) - f[v]) <= 1e-10);
}

TEST_CASE("approximate application of zero is zero") {
    const auto g = path_graph(5);
    const auto op = make_cheb_operator(heat_tikhonov_union(), 6, lambda_max_bound(g));
    const auto out = apply_cheb(op, Laplacian(g), Signal(5, 0.0));
    for (double v : out.values) CHECK(v == 0.0);
}

TEST_CASE("approximate application is linear") {
    Rng rng(13);
    const auto g = random_geometric_graph(rng, 20);
    const Laplacian lap(g);
    const auto op = make_cheb_operator(heat_tikhonov_union(), 12, lambda_max_bound(g));
    const auto f1 = random_signal(rng, 20);
    const auto f2 = random_signal(rng, 20);
    Signal combo(20);
    for (int v = 0; v < 20; ++v) combo[v] = 2.0 * f1[v] - 3.0 * f2[v];
    const auto a = apply_cheb(op, lap, f1);
    const auto b = apply_cheb(op, lap, f2);
    const auto c = apply_cheb(op, lap, combo);
    for (std::size_t i = 0; i < c.values.size(); ++i)
        CHECK(std::abs(c.values[i] - (2.0 * a.values[i] - 3.0 * b.values[i])) <= 1e-10);
}

TEST_CASE("order 20 heat approximation is accurate on a random graph") {
    Rng rng(19);
    const auto g = random_geometric_graph(rng, 50);
    const Laplacian lap(g);
    const auto s = spectrum(lap);
    const MultiplierUnion u{{multiplier_heat(1.0)}};
    const auto op = make_cheb_operator(u, 20, lambda_max_bound(g));
    const auto f = random_signal(rng, 50);
    const auto approx = apply_cheb(op, lap, f);
    const auto exact = apply_exact(u, s, f);
    CHECK(rel_err(approx.values, exact.values) < 1e-3);
}

TEST_CASE("approximation error respects the spectral truncation bound") {
    Rng rng(29);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 10 + static_cast<int>(rng.next_u64() % 31);
        const auto g = random_geometric_graph(rng, n);
        const Laplacian lap(g);
        const auto s = spectrum(lap);
        const auto u = heat_tikhonov_union();
        const int order = 3 + static_cast<int>(rng.next_u64() % 10);
        const auto op = make_cheb_operator(u, order, lambda_max_bound(g));
        const auto f = random_signal(rng, n);

        const auto approx = apply_cheb(op, lap, f);
        const auto exact = apply_exact(u, s, f);
        Signal diff(approx.values.size());
        for (std::size_t i = 0; i < diff.size(); ++i)
            diff[i] = approx.values[i] - exact.values[i];
        const double bound = norm2(f) * spectral_error_bound(op, u, s);
        CHECK(norm2(diff) <= bound + 1e-12);
    }
}

TEST_CASE("adjoint of the identity union is the identity on one block") {
    Rng rng(37);
    const auto g = random_geometric_graph(rng, 15);
    const Laplacian lap(g);
    const auto op = make_cheb_operator(identity_union(), 8, lambda_max_bound(g));
    auto a = StackedCoefficients::zeros(1, 15);
    const auto r = random_signal(rng, 15);
    std::copy(r.begin(), r.end(), a.block(0).begin());
    const auto out = apply_cheb_adjoint(op, lap, a);
    for (int v = 0; v < 15; ++v) CHECK(std::abs(out[v] - r[v]) <= 1e-10);
}

TEST_CASE("adjoint satisfies the inner product identity") {
    Rng rng(43);
    const auto g = random_geometric_graph(rng, 22);
    const Laplacian lap(g);
    const auto op = make_cheb_operator(heat_tikhonov_union(), 9, lambda_max_bound(g));
    for (int trial = 0; trial < 100; ++trial) {
        const auto f = random_signal(rng, 22);
        auto a = StackedCoefficients::zeros(2, 22);
        for (auto& v : a.values) v = rng.uniform(-1.0, 1.0);
        const auto phif = apply_cheb(op, lap, f);
        const auto phistar_a = apply_cheb_adjoint(op, lap, a);
        const double lhs = dot(phif.values, a.values);
        const double rhs = dot(f, phistar_a);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("adjoint validates stacked dimensions") {
    const auto g = path_graph(4);
    const auto op = make_cheb_operator(heat_tikhonov_union(), 5, lambda_max_bound(g));
    CHECK_THROWS_AS(apply_cheb_adjoint(op, Laplacian(g), StackedCoefficients::zeros(1, 4)),
                    DimensionError);
    CHECK_THROWS_AS(apply_cheb_adjoint(op, Laplacian(g), StackedCoefficients::zeros(2, 3)),
                    DimensionError);
}

TEST_CASE("gram coefficients double the order and sum block self-products") {
    const auto g = path_graph(5);
    const auto op = make_cheb_operator(heat_tikhonov_union(), 7, lambda_max_bound(g));
    const auto d = gram_coeffs(op);
    CHECK(d.order() == 14);
    CHECK(d.alpha == op.alpha());
    // pointwise: d evaluates to the sum of squared block evaluations
    for (int i = 0; i <= 40; ++i) {
        const double x = 2.0 * op.alpha() * i / 40.0;
        double want = 0.0;
        for (int j = 0; j < op.num_blocks(); ++j) {
            const double v = eval_expansion(op.expansion(j), x);
            want += v * v;
        }
        CHECK(std::abs(eval_expansion(d, x) - want) <= 1e-12);
    }
}

TEST_CASE("gram application equals adjoint after forward") {
    Rng rng(53);
    const auto g = random_geometric_graph(rng, 26);
    const Laplacian lap(g);
    const auto op = make_cheb_operator(heat_tikhonov_union(), 8, lambda_max_bound(g));
    const auto f = random_signal(rng, 26);
    const auto gram = apply_cheb_gram(op, lap, f);
    const auto composed = apply_cheb_adjoint(op, lap, apply_cheb(op, lap, f));
    CHECK(max_abs_diff(gram, composed) <= 1e-10);
}

TEST_CASE("gram of the identity union is the identity") {
    Rng rng(59);
    const auto g = random_geometric_graph(rng, 14);
    const auto op = make_cheb_operator(identity_union(), 6, lambda_max_bound(g));
    const auto f = random_signal(rng, 14);
    const auto out = apply_cheb_gram(op, Laplacian(g), f);
    for (int v = 0; v < 14; ++v) CHECK(std::abs(out[v] - f[v]) <= 1e-10);
}

TEST_CASE("gram scales eigenvectors by the squared frame response") {
    Rng rng(61);
    const auto g = random_geometric_graph(rng, 17);
    const Laplacian lap(g);
    const auto s = spectrum(lap);
    const auto op = make_cheb_operator(heat_tikhonov_union(), 8, lambda_max_bound(g));
    for (int l : {0, 7, 16}) {
        const auto chi = eigenvector_signal(s, l);
        const auto out = apply_cheb_gram(op, lap, chi);
        double gain = 0.0;
        for (int j = 0; j < op.num_blocks(); ++j) {
            const double v = eval_expansion(op.expansion(j), s.eigenvalues[l]);
            gain += v * v;
        }
        for (int v = 0; v < 17; ++v) CHECK(std::abs(out[v] - gain * chi[v]) <= 1e-9);
    }
}

TEST_CASE("operator norm bound for near-constant frames is near one") {
    const auto g = path_graph(8);
    const auto id = make_cheb_operator(identity_union(), 6, lambda_max_bound(g));
    const double b1 = operator_norm_bound(id);
    CHECK(b1 >= 1.0);
    CHECK(b1 <= 1.0 + 1e-6);

    // tikhonov peaks at x = 0 with value 1
    const auto tik = make_cheb_operator({{multiplier_tikhonov(1.0, 1)}}, 30, lambda_max_bound(g));
    const double b2 = operator_norm_bound(tik);
    CHECK(b2 >= 1.0 - 1e-6);
    CHECK(b2 <= 1.0 + 1e-3);
}

TEST_CASE("operator norm bound dominates the frame response at eigenvalues") {
    Rng rng(67);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 12 + static_cast<int>(rng.next_u64() % 20);
        const auto g = random_geometric_graph(rng, n);
        const auto s = spectrum(Laplacian(g));
        const auto op = make_cheb_operator(heat_tikhonov_union(), 10, lambda_max_bound(g));
        const double bound = operator_norm_bound(op);
        for (double lambda : s.eigenvalues) {
            double frame = 0.0;
            for (int j = 0; j < op.num_blocks(); ++j) {
                const double v = eval_expansion(op.expansion(j), lambda);
                frame += v * v;
            }
            CHECK(frame <= bound);
        }
    }
}

TEST_CASE("operator construction validates its expansions") {
    CHECK_THROWS_AS(ChebOperator({}), Error);
    ChebExpansion a{1.0, {1.0, 0.5}};
    ChebExpansion b{2.0, {1.0, 0.5}};
    ChebExpansion c{1.0, {1.0, 0.5, 0.25}};
    CHECK_THROWS_AS(ChebOperator({a, b}), Error);
    CHECK_THROWS_AS(ChebOperator({a, c}), Error);
    CHECK_THROWS_AS(make_cheb_operator(MultiplierUnion{}, 5, 2.0), Error);
}

TEST_CASE("serial and parallel kernels agree bitwise") {
    Rng rng(71);
    const auto g = random_geometric_graph(rng, 40);
    const Laplacian lap(g);
    const auto op = make_cheb_operator(heat_tikhonov_union(), 12, lambda_max_bound(g));
    const auto f = random_signal(rng, 40);

    const auto fs = apply_cheb(op, lap, f, ExecPolicy::serial);
    const auto fp = apply_cheb(op, lap, f, ExecPolicy::parallel);
    CHECK(fs.values == fp.values);

    auto a = StackedCoefficients::zeros(2, 40);
    for (auto& v : a.values) v = rng.uniform(-1.0, 1.0);
    CHECK(apply_cheb_adjoint(op, lap, a, ExecPolicy::serial) ==
          apply_cheb_adjoint(op, lap, a, ExecPolicy::parallel));

    CHECK(apply_cheb_gram(op, lap, f, ExecPolicy::serial) ==
          apply_cheb_gram(op, lap, f, ExecPolicy::parallel));
}
