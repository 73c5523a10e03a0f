#include "gsp/operators.hpp"

#include <algorithm>
#include <cmath>

#include "gsp/parallel.hpp"

namespace gsp {

StackedCoefficients StackedCoefficients::zeros(int num_blocks, int block_size) {
    StackedCoefficients s;
    s.num_blocks = num_blocks;
    s.block_size = block_size;
    s.values.assign(static_cast<std::size_t>(num_blocks) * block_size, 0.0);
    return s;
}

ChebOperator::ChebOperator(std::vector<ChebExpansion> expansions)
    : expansions_(std::move(expansions)) {
    if (expansions_.empty()) throw Error("ChebOperator: needs at least one expansion");
    for (const auto& e : expansions_) {
        if (e.alpha != expansions_.front().alpha) throw Error("ChebOperator: alpha mismatch");
        if (e.order() != expansions_.front().order()) throw Error("ChebOperator: order mismatch");
    }
}

ChebOperator make_cheb_operator(const MultiplierUnion& u, int order, double lambda_max,
                                int quad_points) {
    if (u.size() < 1) throw Error("make_cheb_operator: empty multiplier union");
    std::vector<ChebExpansion> exps;
    exps.reserve(static_cast<std::size_t>(u.size()));
    for (const auto& m : u.multipliers) exps.push_back(cheb_coeffs(m, order, lambda_max, quad_points));
    return ChebOperator(std::move(exps));
}

StackedCoefficients apply_exact(const MultiplierUnion& u, const Spectrum& s, const Signal& f) {
    if (static_cast<int>(f.size()) != s.n) throw DimensionError("apply_exact: signal length mismatch");
    const Signal fhat = gft(s, f);
    auto out = StackedCoefficients::zeros(u.size(), s.n);
    Signal scaled(static_cast<std::size_t>(s.n));
    for (int j = 0; j < u.size(); ++j) {
        for (int l = 0; l < s.n; ++l) scaled[l] = u.multipliers[j](s.eigenvalues[l]) * fhat[l];
        const Signal block = igft(s, scaled);
        std::copy(block.begin(), block.end(), out.block(j).begin());
    }
    return out;
}

namespace {

// tnext = (c/alpha) * (L - alpha I) tcur - sub, the shared step of both
// recurrence starts (c = 1, sub = 0-vector semantics handled by caller).
void recurrence_step(const Laplacian& l, double alpha, const Signal& tcur, const Signal& tprev,
                     Signal& tnext, ExecPolicy policy) {
    const int n = l.size();
    par::for_each_index(n, policy, [&](int v) {
        double acc = l.diagonal(v) * tcur[v];
        for (const auto& nb : l.neighbors(v)) acc -= nb.weight * tcur[nb.id];
        // Written as 2*(acc/alpha) so the rounding matches the node-local
        // simulator step exactly.
        tnext[v] = 2.0 * (acc / alpha) - 2.0 * tcur[v] - tprev[v];
    });
}

void recurrence_first(const Laplacian& l, double alpha, const Signal& f, Signal& t1,
                      ExecPolicy policy) {
    par::for_each_index(l.size(), policy, [&](int v) {
        double acc = l.diagonal(v) * f[v];
        for (const auto& nb : l.neighbors(v)) acc -= nb.weight * f[nb.id];
        t1[v] = acc / alpha - f[v];
    });
}

void axpy(double a, const Signal& x, std::span<double> y, ExecPolicy policy) {
    par::for_each_index(static_cast<int>(x.size()), policy, [&](int i) { y[i] += a * x[i]; });
}

// Streaming core shared by apply_cheb / apply_cheb_gram: accumulates
// coefficient rows over one recurrence pass. rows[r] is a full coefficient
// vector (order+1 entries); outputs[r] receives 1/2 rows[r][0] f + sum_k
// rows[r][k] Tbar_k(L) f.
void accumulate_expansions(const Laplacian& l, double alpha, const Signal& f,
                           std::span<const std::vector<double>*> rows,
                           std::span<std::span<double>> outputs, ExecPolicy policy) {
    const int n = l.size();
    const int nrows = static_cast<int>(rows.size());
    const int order = static_cast<int>(rows[0]->size()) - 1;

    for (int r = 0; r < nrows; ++r) {
        const double c0 = (*rows[r])[0];
        auto out = outputs[r];
        par::for_each_index(n, policy, [&](int i) { out[i] = 0.5 * c0 * f[i]; });
    }
    if (order < 1) return;

    Signal tprev = f;
    Signal tcur(static_cast<std::size_t>(n));
    recurrence_first(l, alpha, f, tcur, policy);
    for (int r = 0; r < nrows; ++r) axpy((*rows[r])[1], tcur, outputs[r], policy);

    Signal tnext(static_cast<std::size_t>(n));
    for (int k = 2; k <= order; ++k) {
        recurrence_step(l, alpha, tcur, tprev, tnext, policy);
        std::swap(tprev, tcur);
        std::swap(tcur, tnext);
        for (int r = 0; r < nrows; ++r) axpy((*rows[r])[k], tcur, outputs[r], policy);
    }
}

} // namespace

std::vector<Signal> cheb_recurrence_apply(const Laplacian& l, double alpha, const Signal& f,
                                          int order, ExecPolicy policy) {
    if (static_cast<int>(f.size()) != l.size())
        throw DimensionError("cheb_recurrence_apply: signal length mismatch");
    if (!(alpha > 0.0)) throw Error("cheb_recurrence_apply: alpha must be positive");
    if (order < 1) throw Error("cheb_recurrence_apply: order must be >= 1");

    std::vector<Signal> basis;
    basis.reserve(static_cast<std::size_t>(order) + 1);
    basis.push_back(f);
    Signal t1(f.size());
    recurrence_first(l, alpha, f, t1, policy);
    basis.push_back(std::move(t1));
    for (int k = 2; k <= order; ++k) {
        Signal tnext(f.size());
        recurrence_step(l, alpha, basis[k - 1], basis[k - 2], tnext, policy);
        basis.push_back(std::move(tnext));
    }
    return basis;
}

StackedCoefficients apply_cheb(const ChebOperator& op, const Laplacian& l, const Signal& f,
                               ExecPolicy policy) {
    if (static_cast<int>(f.size()) != l.size())
        throw DimensionError("apply_cheb: signal length mismatch");
    const int eta = op.num_blocks();
    auto out = StackedCoefficients::zeros(eta, l.size());

    std::vector<const std::vector<double>*> rows(static_cast<std::size_t>(eta));
    std::vector<std::span<double>> outs(static_cast<std::size_t>(eta));
    for (int j = 0; j < eta; ++j) {
        rows[j] = &op.expansion(j).coeffs;
        outs[j] = out.block(j);
    }
    accumulate_expansions(l, op.alpha(), f, rows, outs, policy);
    return out;
}

Signal apply_cheb_adjoint(const ChebOperator& op, const Laplacian& l,
                          const StackedCoefficients& a, ExecPolicy policy) {
    const int eta = op.num_blocks();
    const int n = l.size();
    if (a.num_blocks != eta || a.block_size != n ||
        static_cast<int>(a.values.size()) != eta * n)
        throw DimensionError("apply_cheb_adjoint: stacked length mismatch");

    Signal out(static_cast<std::size_t>(n), 0.0);
    Signal blockout(static_cast<std::size_t>(n));
    for (int j = 0; j < eta; ++j) {
        const Signal aj(a.block(j).begin(), a.block(j).end());
        const std::vector<double>* row = &op.expansion(j).coeffs;
        std::span<double> outspan(blockout);
        accumulate_expansions(l, op.alpha(), aj, {&row, 1}, {&outspan, 1}, policy);
        axpy(1.0, blockout, out, policy);
    }
    return out;
}

ChebExpansion gram_coeffs(const ChebOperator& op) {
    ChebExpansion d = product_coeffs(op.expansion(0), op.expansion(0));
    for (int j = 1; j < op.num_blocks(); ++j) {
        const ChebExpansion pj = product_coeffs(op.expansion(j), op.expansion(j));
        for (std::size_t k = 0; k < d.coeffs.size(); ++k) d.coeffs[k] += pj.coeffs[k];
    }
    return d;
}

Signal apply_cheb_gram(const ChebOperator& op, const Laplacian& l, const Signal& f,
                       ExecPolicy policy) {
    if (static_cast<int>(f.size()) != l.size())
        throw DimensionError("apply_cheb_gram: signal length mismatch");
    const ChebExpansion d = gram_coeffs(op);
    Signal out(f.size());
    const std::vector<double>* row = &d.coeffs;
    std::span<double> outspan(out);
    accumulate_expansions(l, op.alpha(), f, {&row, 1}, {&outspan, 1}, policy);
    return out;
}

double operator_norm_bound(const ChebOperator& op) {
    const double hi = 2.0 * op.alpha();
    const auto frame = [&](double x) {
        double s = 0.0;
        for (const auto& e : op.expansions()) {
            const double g = eval_expansion(e, x);
            s += g * g;
        }
        return s;
    };

    const int grid = std::max(64 * (op.order() + 1), 1024);
    double best = 0.0;
    int arg = 0;
    for (int i = 0; i <= grid; ++i) {
        const double v = frame(hi * i / grid);
        if (v > best) {
            best = v;
            arg = i;
        }
    }
    // Sharpen inside the bracketing cell by ternary search.
    double lo = hi * std::max(0, arg - 1) / grid;
    double up = hi * std::min(grid, arg + 1) / grid;
    for (int it = 0; it < 200; ++it) {
        const double m1 = lo + (up - lo) / 3.0;
        const double m2 = up - (up - lo) / 3.0;
        if (frame(m1) < frame(m2))
            lo = m1;
        else
            up = m2;
    }
    best = std::max(best, frame(0.5 * (lo + up)));
    // Pad for grid resolution so the result stays a true upper bound.
    return best * (1.0 + 1e-9) + 1e-12;
}

} // namespace gsp
