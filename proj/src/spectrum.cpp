#include "gsp/spectrum.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

namespace gsp {

Spectrum spectrum(const Laplacian& l, int max_dense_size) {
    const int n = l.size();
    if (n > max_dense_size)
        throw SizeGuardError("spectrum: N = " + std::to_string(n) + " exceeds dense guard " +
                             std::to_string(max_dense_size));

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int v = 0; v < n; ++v) {
        m(v, v) = l.diagonal(v);
        for (const auto& nb : l.neighbors(v)) m(v, nb.id) = -nb.weight;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) throw Error("spectrum: eigendecomposition failed");

    Spectrum s;
    s.n = n;
    s.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    s.eigenvectors.resize(static_cast<std::size_t>(n) * n);
    Eigen::Map<Eigen::MatrixXd> out(s.eigenvectors.data(), n, n);
    out = solver.eigenvectors();
    // Deterministic sign: flip each column so its largest-magnitude entry is positive.
    for (int c = 0; c < n; ++c) {
        int arg = 0;
        double best = 0.0;
        for (int r = 0; r < n; ++r) {
            const double a = std::abs(out(r, c));
            if (a > best) {
                best = a;
                arg = r;
            }
        }
        if (out(arg, c) < 0.0) out.col(c) = -out.col(c);
    }
    return s;
}

Signal gft(const Spectrum& s, const Signal& f) {
    if (static_cast<int>(f.size()) != s.n) throw DimensionError("gft: signal length mismatch");
    Eigen::Map<const Eigen::MatrixXd> chi(s.eigenvectors.data(), s.n, s.n);
    Eigen::Map<const Eigen::VectorXd> fv(f.data(), s.n);
    Signal fhat(static_cast<std::size_t>(s.n));
    Eigen::Map<Eigen::VectorXd>(fhat.data(), s.n) = chi.transpose() * fv;
    return fhat;
}

Signal igft(const Spectrum& s, const Signal& fhat) {
    if (static_cast<int>(fhat.size()) != s.n) throw DimensionError("igft: coefficient length mismatch");
    Eigen::Map<const Eigen::MatrixXd> chi(s.eigenvectors.data(), s.n, s.n);
    Eigen::Map<const Eigen::VectorXd> cv(fhat.data(), s.n);
    Signal f(static_cast<std::size_t>(s.n));
    Eigen::Map<Eigen::VectorXd>(f.data(), s.n) = chi * cv;
    return f;
}

} // namespace gsp
