#pragma once

#include <vector>

#include "gsp/graph.hpp"

namespace gsp {

/// Dense eigendecomposition of a Laplacian: the test/verification oracle.
/// Eigenvalues ascend (lambda_0 = 0 for a connected graph); eigenvectors are
/// orthonormal columns with deterministic sign (largest-|entry| component is
/// positive). The distributed code paths never touch this type.
struct Spectrum {
    int n = 0;
    std::vector<double> eigenvalues;   // ascending
    std::vector<double> eigenvectors;  // column-major n*n; column l = chi_l

    double eigenvector(int l, int node) const {
        return eigenvectors[static_cast<std::size_t>(l) * n + node];
    }
    double lambda_max() const { return eigenvalues.back(); }
};

/// Dense symmetric eigendecomposition. Guarded: throws SizeGuardError above
/// max_dense_size (this is an oracle, not a production path).
Spectrum spectrum(const Laplacian& l, int max_dense_size = 2000);

/// Graph Fourier transform: fhat(l) = <chi_l, f>.
Signal gft(const Spectrum& s, const Signal& f);

/// Inverse graph Fourier transform: f(n) = sum_l fhat(l) chi_l(n).
Signal igft(const Spectrum& s, const Signal& fhat);

} // namespace gsp
