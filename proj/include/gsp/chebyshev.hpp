#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gsp/error.hpp"

namespace gsp {

/// Scalar spectral function g: [0, lambda_max] -> R plus a descriptive name.
/// A Laplacian filter is defined by rescaling each eigencomponent by g(lambda).
struct Multiplier {
    std::function<double(double)> fn;
    std::string name;

    double operator()(double x) const { return fn(x); }
};

/// Truncated shifted-Chebyshev expansion on [0, 2*alpha]:
///
///   g(x) ~= 1/2 c[0] + sum_{k=1..order} c[k] Tbar_k(x),
///   Tbar_k(x) = T_k((x - alpha) / alpha).
///
/// The half-weighted first term is part of the coefficient convention; every
/// evaluation in the library goes through eval_expansion (or the equivalent
/// accumulation in the operator kernels) so the convention lives in one place.
struct ChebExpansion {
    double alpha = 0.0;           // half-width, lambda_max / 2
    std::vector<double> coeffs;   // c_0 .. c_order

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Chebyshev coefficients of a multiplier on [0, lambda_max] via
/// Chebyshev-Gauss quadrature at theta_p = pi (p + 1/2) / P:
///
///   c_k ~= (2/P) sum_p cos(k theta_p) g(alpha (cos theta_p + 1)).
///
/// quad_points = 0 selects the default P = max(order + 1, 64); otherwise
/// quad_points must be >= order + 1. Throws on non-finite g evaluations.
ChebExpansion cheb_coeffs(const Multiplier& g, int order, double lambda_max,
                          int quad_points = 0);

/// Evaluates the truncated series at x through the shifted recurrence
/// Tbar_k(x) = (2/alpha)(x - alpha) Tbar_{k-1}(x) - Tbar_{k-2}(x).
/// Out-of-domain x is evaluated as-is (no clamping): the operator kernels only
/// ever evaluate at true eigenvalues, which the lambda_max bound keeps inside.
double eval_expansion(const ChebExpansion& e, double x);

/// Expansion of the pointwise product of two truncated series, exact as
/// polynomials (order sum of the input orders), using
/// T_k T_k' = 1/2 (T_{k+k'} + T_{|k-k'|}). Inputs must share alpha.
ChebExpansion product_coeffs(const ChebExpansion& a, const ChebExpansion& b);

/// Heat kernel g(x) = exp(-t x), the graph low-pass smoother.
Multiplier multiplier_heat(double t);

/// Regularization filter g(x) = tau / (tau + 2 x^r): the closed-form solution
/// operator of the graph Tikhonov denoising problem.
Multiplier multiplier_tikhonov(double tau, int r);

/// Constant multiplier (g identical to c); c = 1 is the identity operator.
Multiplier multiplier_constant(double c);

/// Wavelet-frame kernels: a low-pass h (h(0) > 0) followed by num_scales
/// band-pass kernels g(t_j x) with g(0) = 0, at logarithmically spaced scales
/// t_1 > ... > t_J. Shapes: g(u) = u e^(1-u) (peak 1 at u = 1) and
/// h(x) = exp(-(x / (0.3 lambda_max))^4).
std::vector<Multiplier> sgwt_kernels(int num_scales, double lambda_max);

/// The scales used by sgwt_kernels: log-spaced from t_1 = 2 down to
/// t_J = 2 / lambda_max (a single scale uses the fine end).
std::vector<double> sgwt_scales(int num_scales, double lambda_max);

} // namespace gsp
