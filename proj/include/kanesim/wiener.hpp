#pragma once

#include <cstdint>
#include <random>

namespace kanesim {

// One independent Wiener-increment stream per trajectory. The state is a
// std::mt19937_64 (bit-exact across platforms by the standard) keyed by
// (seed, stream_index) through a splitmix64 finalizer, so the same pair
// always reproduces the same increment sequence regardless of how many
// other streams exist or which thread runs it.
//
// Normal variates come from a hand-rolled Marsaglia polar transform on
// 53-bit uniforms; std::normal_distribution is avoided because its output
// is not pinned by the standard and would break golden-file determinism.
class WienerStream {
public:
    WienerStream(std::uint64_t seed, std::uint64_t stream_index);

    // Standard normal draw, mean 0, variance 1.
    double next_normal();

    // Wiener increment over a step dt: normal with mean 0, variance dt.
    double next_increment(double dt);

private:
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace kanesim
