#pragma once

#include <span>
#include <vector>

#include "gsp/chebyshev.hpp"
#include "gsp/graph.hpp"
#include "gsp/spectrum.hpp"

namespace gsp {

/// Union of spectral multipliers g_1..g_eta defining the stacked operator
/// Phi: R^N -> R^{eta N}.
struct MultiplierUnion {
    std::vector<Multiplier> multipliers;

    int size() const { return static_cast<int>(multipliers.size()); }
};

/// Stacked output of a multiplier union: block j (0-based) occupies indices
/// j*N .. j*N + N-1, so blocks are contiguous and block-major.
struct StackedCoefficients {
    std::vector<double> values;
    int num_blocks = 0;   // eta
    int block_size = 0;   // N

    static StackedCoefficients zeros(int num_blocks, int block_size);

    std::span<double> block(int j) {
        return {values.data() + static_cast<std::size_t>(j) * block_size,
                static_cast<std::size_t>(block_size)};
    }
    std::span<const double> block(int j) const {
        return {values.data() + static_cast<std::size_t>(j) * block_size,
                static_cast<std::size_t>(block_size)};
    }
    double& at(int j, int n) { return values[static_cast<std::size_t>(j) * block_size + n]; }
    double at(int j, int n) const { return values[static_cast<std::size_t>(j) * block_size + n]; }
};

/// Chebyshev approximation of a multiplier union: one expansion per block,
/// all sharing the domain half-width and truncation order. This is the shared
/// read-only configuration distributed nodes start from.
class ChebOperator {
public:
    explicit ChebOperator(std::vector<ChebExpansion> expansions);

    const std::vector<ChebExpansion>& expansions() const { return expansions_; }
    const ChebExpansion& expansion(int j) const { return expansions_[j]; }
    double alpha() const { return expansions_.front().alpha; }
    int order() const { return expansions_.front().order(); }
    int num_blocks() const { return static_cast<int>(expansions_.size()); }

private:
    std::vector<ChebExpansion> expansions_;
};

/// Expands every multiplier of the union to the given order on
/// [0, lambda_max]. lambda_max is normally the distributed-knowledge upper
/// bound, not the true largest eigenvalue.
ChebOperator make_cheb_operator(const MultiplierUnion& u, int order, double lambda_max,
                                int quad_points = 0);

/// Exact operator application through the spectral oracle:
/// block j, node n = sum_l g_j(lambda_l) fhat(l) chi_l(n).
StackedCoefficients apply_exact(const MultiplierUnion& u, const Spectrum& s, const Signal& f);

/// The Chebyshev basis signals [Tbar_0(L)f, ..., Tbar_order(L)f] from the
/// two-term recurrence; cost Theta(order * |E|). Exposed because tests check
/// it against the spectral oracle term by term.
std::vector<Signal> cheb_recurrence_apply(const Laplacian& l, double alpha, const Signal& f,
                                          int order, ExecPolicy policy = ExecPolicy::parallel);

/// Approximate operator application. One recurrence pass is shared by all
/// blocks: the Tbar_k(L)f vectors do not depend on the multiplier.
StackedCoefficients apply_cheb(const ChebOperator& op, const Laplacian& l, const Signal& f,
                               ExecPolicy policy = ExecPolicy::parallel);

/// Adjoint application: (Phi~* a)_n = sum_j (1/2 c_{j,0} a_j +
/// sum_k c_{j,k} Tbar_k(L) a_j)_n. One recurrence pass per block.
Signal apply_cheb_adjoint(const ChebOperator& op, const Laplacian& l,
                          const StackedCoefficients& a, ExecPolicy policy = ExecPolicy::parallel);

/// Coefficients d_k of the Gram operator Phi~* Phi~ as a single expansion of
/// twice the order: the sum over blocks of each expansion's self-product.
ChebExpansion gram_coeffs(const ChebOperator& op);

/// Gram application as one depth-2*order recurrence pass with gram_coeffs.
Signal apply_cheb_gram(const ChebOperator& op, const Laplacian& l, const Signal& f,
                       ExecPolicy policy = ExecPolicy::parallel);

/// Upper bound on ||Phi~||^2: the supremum over [0, 2*alpha] of
/// sum_j g~_j(x)^2, located on a dense grid and sharpened by local search,
/// then padded by a hair for grid resolution. All true eigenvalues lie inside
/// the interval, so this dominates the operator norm squared.
double operator_norm_bound(const ChebOperator& op);

} // namespace gsp
