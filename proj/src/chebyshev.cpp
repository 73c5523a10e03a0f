#include "gsp/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gsp {

ChebExpansion cheb_coeffs(const Multiplier& g, int order, double lambda_max, int quad_points) {
    if (order < 1) throw Error("cheb_coeffs: order must be >= 1");
    if (!(lambda_max > 0.0)) throw Error("cheb_coeffs: lambda_max must be positive");
    const int p = quad_points == 0 ? std::max(order + 1, 64) : quad_points;
    if (p < order + 1) throw Error("cheb_coeffs: quad_points must be >= order + 1");

    const double alpha = lambda_max / 2.0;
    std::vector<double> theta(static_cast<std::size_t>(p));
    std::vector<double> gval(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) {
        theta[i] = M_PI * (i + 0.5) / p;
        const double x = alpha * (std::cos(theta[i]) + 1.0);
        gval[i] = g(x);
        if (!std::isfinite(gval[i]))
            throw Error("cheb_coeffs: multiplier '" + g.name + "' is not finite at x = " +
                        std::to_string(x));
    }

    ChebExpansion e;
    e.alpha = alpha;
    e.coeffs.resize(static_cast<std::size_t>(order) + 1);
    for (int k = 0; k <= order; ++k) {
        double acc = 0.0;
        for (int i = 0; i < p; ++i) acc += std::cos(k * theta[i]) * gval[i];
        e.coeffs[k] = 2.0 * acc / p;
    }
    return e;
}

double eval_expansion(const ChebExpansion& e, double x) {
    const double y = (x - e.alpha) / e.alpha;   // shift to [-1, 1]
    double acc = 0.5 * e.coeffs[0];
    double tprev = 1.0;
    double tcur = y;
    if (e.order() >= 1) acc += e.coeffs[1] * tcur;
    for (int k = 2; k <= e.order(); ++k) {
        const double tnext = 2.0 * y * tcur - tprev;
        acc += e.coeffs[k] * tnext;
        tprev = tcur;
        tcur = tnext;
    }
    return acc;
}

ChebExpansion product_coeffs(const ChebExpansion& a, const ChebExpansion& b) {
    if (a.alpha != b.alpha) throw Error("product_coeffs: alpha mismatch");
    const int ma = a.order();
    const int mb = b.order();

    // Work with plain T_k coefficients (k = 0 term not halved), then convert back.
    std::vector<double> ea(a.coeffs.begin(), a.coeffs.end());
    std::vector<double> eb(b.coeffs.begin(), b.coeffs.end());
    ea[0] *= 0.5;
    eb[0] *= 0.5;

    std::vector<double> prod(static_cast<std::size_t>(ma + mb) + 1, 0.0);
    for (int k = 0; k <= ma; ++k) {
        if (ea[k] == 0.0) continue;
        for (int j = 0; j <= mb; ++j) {
            const double c = 0.5 * ea[k] * eb[j];
            prod[k + j] += c;
            prod[std::abs(k - j)] += c;
        }
    }

    ChebExpansion out;
    out.alpha = a.alpha;
    out.coeffs = std::move(prod);
    out.coeffs[0] *= 2.0;
    return out;
}

Multiplier multiplier_heat(double t) {
    if (!(t > 0.0)) throw Error("multiplier_heat: t must be positive");
    return {[t](double x) { return std::exp(-t * x); }, "heat(t=" + std::to_string(t) + ")"};
}

Multiplier multiplier_tikhonov(double tau, int r) {
    if (!(tau > 0.0)) throw Error("multiplier_tikhonov: tau must be positive");
    if (r < 1) throw Error("multiplier_tikhonov: r must be >= 1");
    return {[tau, r](double x) { return tau / (tau + 2.0 * std::pow(x, r)); },
            "tikhonov(tau=" + std::to_string(tau) + ",r=" + std::to_string(r) + ")"};
}

Multiplier multiplier_constant(double c) {
    return {[c](double) { return c; }, "const(" + std::to_string(c) + ")"};
}

std::vector<double> sgwt_scales(int num_scales, double lambda_max) {
    if (num_scales < 1) throw Error("sgwt_scales: need at least one scale");
    if (!(lambda_max > 0.0)) throw Error("sgwt_scales: lambda_max must be positive");
    const double t_coarse = 2.0;
    const double t_fine = 2.0 / lambda_max;
    std::vector<double> scales(static_cast<std::size_t>(num_scales));
    if (num_scales == 1) {
        scales[0] = t_fine;
        return scales;
    }
    const double l0 = std::log(t_coarse);
    const double l1 = std::log(t_fine);
    for (int j = 0; j < num_scales; ++j)
        scales[j] = std::exp(l0 + (l1 - l0) * j / (num_scales - 1));
    return scales;
}

std::vector<Multiplier> sgwt_kernels(int num_scales, double lambda_max) {
    const auto scales = sgwt_scales(num_scales, lambda_max);
    std::vector<Multiplier> kernels;
    kernels.reserve(static_cast<std::size_t>(num_scales) + 1);
    const double cutoff = 0.3 * lambda_max;
    kernels.push_back({[cutoff](double x) {
                           const double u = x / cutoff;
                           return std::exp(-(u * u * u * u));
                       },
                       "sgwt-lowpass"});
    for (int j = 0; j < num_scales; ++j) {
        const double t = scales[j];
        kernels.push_back({[t](double x) {
                               const double u = t * x;
                               return u * std::exp(1.0 - u);
                           },
                           "sgwt-band(t=" + std::to_string(t) + ")"});
    }
    return kernels;
}

} // namespace gsp
