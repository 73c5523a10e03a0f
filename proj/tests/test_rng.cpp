#include <cmath>

#include "doctest.h"

#include "gsp/rng.hpp"

using namespace gsp;

TEST_CASE("rng streams are reproducible and seed-sensitive") {
    Rng a(123), b(123), c(124);
    bool all_equal = true;
    bool any_diff = false;
    for (int i = 0; i < 1000; ++i) {
        const double va = a.uniform01();
        if (va != b.uniform01()) all_equal = false;
        if (va != c.uniform01()) any_diff = true;
        CHECK(va >= 0.0);
        CHECK(va < 1.0);
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("rng known first draw for a fixed seed") {
    // mt19937_64(5489) first output is pinned by the standard; the uniform
    // mapping divides the top 53 bits by 2^53.
    std::mt19937_64 ref(5489);
    Rng r(5489);
    CHECK(r.next_u64() == ref());
    std::mt19937_64 ref2(5489);
    Rng r2(5489);
    CHECK(r2.uniform01() == static_cast<double>(ref2() >> 11) * 0x1.0p-53);
}

TEST_CASE("uniform range mapping") {
    Rng r(9);
    for (int i = 0; i < 100; ++i) {
        const double v = r.uniform(-2.0, 5.0);
        CHECK(v >= -2.0);
        CHECK(v < 5.0);
    }
}

TEST_CASE("normal draws have plausible moments") {
    Rng r(2024);
    const int n = 200000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = r.normal();
        sum += v;
        sumsq += v * v;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(std::abs(mean) < 0.02);
    CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("normal(mean, stddev) scales exactly") {
    Rng a(5), b(5);
    for (int i = 0; i < 50; ++i) {
        const double z = a.normal();
        CHECK(b.normal(2.0, 0.5) == 2.0 + 0.5 * z);
    }
}

TEST_CASE("zero stddev collapses noise to the mean") {
    Rng r(8);
    for (int i = 0; i < 10; ++i) CHECK(r.normal(1.5, 0.0) == 1.5);
}

TEST_CASE("derive_seed separates streams") {
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    // stable: the derivation must never change between runs or versions
    CHECK(derive_seed(42, 7) == derive_seed(42, 7));
    Rng a(derive_seed(10, 0)), b(derive_seed(10, 1));
    CHECK(a.next_u64() != b.next_u64());
}
