#include <doctest.h>

#include <cmath>
#include <vector>

#include "kanesim/wiener.hpp"

using kanesim::WienerStream;

TEST_CASE("streams are deterministic per (seed, index)") {
    WienerStream a(1234, 7);
    WienerStream b(1234, 7);
    for (int i = 0; i < 1000; ++i) {
        CHECK(a.next_normal() == b.next_normal());
    }

    WienerStream c(1234, 8);
    WienerStream d(4321, 7);
    int same_c = 0, same_d = 0;
    WienerStream ref(1234, 7);
    for (int i = 0; i < 1000; ++i) {
        const double r = ref.next_normal();
        if (r == c.next_normal()) ++same_c;
        if (r == d.next_normal()) ++same_d;
    }
    CHECK(same_c == 0);
    CHECK(same_d == 0);
}

TEST_CASE("increments have mean 0 and variance dt at 3 sigma") {
    const double dt = 0.25;
    const int n = 200000;
    WienerStream s(2024, 0);
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double w = s.next_increment(dt);
        sum += w;
        sum2 += w * w;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    // sd(mean) = sqrt(dt/n); sd(var) ~ var*sqrt(2/n) for Gaussian samples.
    CHECK(std::abs(mean) < 3.0 * std::sqrt(dt / n));
    CHECK(std::abs(var - dt) < 3.0 * dt * std::sqrt(2.0 / n));
}

TEST_CASE("normals have unit variance and sane tails") {
    const int n = 200000;
    WienerStream s(5150, 3);
    double sum = 0.0, sum2 = 0.0, sum4 = 0.0;
    int beyond_5 = 0;
    for (int i = 0; i < n; ++i) {
        const double x = s.next_normal();
        sum += x;
        sum2 += x * x;
        sum4 += x * x * x * x;
        if (std::abs(x) > 5.0) ++beyond_5;
    }
    CHECK(std::abs(sum / n) < 3.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(sum2 / n - 1.0) < 3.0 * std::sqrt(2.0 / n));
    // Fourth moment of a standard normal is 3; sd of the estimate ~ sqrt(96/n).
    CHECK(std::abs(sum4 / n - 3.0) < 4.0 * std::sqrt(96.0 / n));
    // P(|x|>5) ~ 6e-7, so a handful at most in 2e5 draws.
    CHECK(beyond_5 <= 3);
}
