#include "kanesim/wiener.hpp"

#include <cmath>

namespace kanesim {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

WienerStream::WienerStream(std::uint64_t seed, std::uint64_t stream_index)
    : rng_(splitmix64(seed + 0x9E3779B97F4A7C15ULL * (stream_index + 1))) {}

double WienerStream::next_normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    for (;;) {
        // 53-bit uniforms in [0,1), mapped to [-1,1).
        const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
        const double v = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
        const double a = 2.0 * u - 1.0;
        const double b = 2.0 * v - 1.0;
        const double s = a * a + b * b;
        if (s >= 1.0 || s == 0.0) continue;
        const double factor = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = b * factor;
        has_spare_ = true;
        return a * factor;
    }
}

double WienerStream::next_increment(double dt) {
    return next_normal() * std::sqrt(dt);
}

}  // namespace kanesim
