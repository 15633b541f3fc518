#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace specsense {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// Finalizer with full avalanche; same mixer SplitMix64 uses on its output.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

// Counter-based generator: one 64-bit state advanced by a Weyl increment,
// output passed through mix64. Cheap to seed, so every (trial, node) pair
// gets its own stream and results do not depend on thread scheduling.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += kGolden;
        return mix64(state_);
    }

    // Uniform on (0, 1]; never returns 0 so log() stays finite.
    double uniform() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    // Circularly symmetric complex normal with per-component variance sigma2,
    // so |z|^2 is exponential with mean 2*sigma2. Marsaglia polar method.
    std::complex<double> cnormal(double sigma2) {
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double scale = std::sqrt(-2.0 * std::log(s) / s * sigma2);
        return {u * scale, v * scale};
    }

private:
    std::uint64_t state_;
};

// Key for one independent trial of one experiment kind.
inline std::uint64_t trial_key(std::uint64_t master_seed, std::uint64_t domain,
                               std::uint64_t trial) {
    std::uint64_t z = mix64(master_seed ^ (domain * kGolden));
    return mix64(z + trial * 0xD1B54A32D192ED03ull);
}

// Per-node stream inside a trial; `node` may also index roles beyond the
// physical node count (relay inputs, later attempts) as long as callers keep
// the index spaces disjoint.
inline SplitMix64 node_stream(std::uint64_t key, std::uint64_t node) {
    return SplitMix64(mix64(key ^ (node * 0x8CB92BA72F3D8DD7ull)));
}

} // namespace specsense
