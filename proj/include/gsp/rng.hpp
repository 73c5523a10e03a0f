#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace gsp {

/// Seeded random source with fixed, implementation-independent mappings.
/// std::uniform_real_distribution / std::normal_distribution are
/// implementation-defined, so reproducible experiment reports use this
/// instead: mt19937_64 bits, 53-bit uniform mapping, Marsaglia polar
/// normals. The algorithm name is recorded in experiment reports.
class Rng {
public:
    static constexpr std::string_view algorithm = "mt19937_64/polar";

    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1) with 53 random mantissa bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via the polar method (no libm trig involved).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Derives an independent per-stream seed from a master seed (splitmix64
/// finalizer). Used to give each experiment trial its own generator.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace gsp
