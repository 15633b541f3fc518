#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "specsense/params.hpp"

namespace specsense {

// One synchronous observation round: per-node fading coefficients, noise, and
// received samples y_i = P * theta * h_i + w_i with theta in {0, 1}.
struct ChannelDraw {
    double theta = 0.0;
    std::vector<std::complex<double>> h;
    std::vector<std::complex<double>> w;
    std::vector<std::complex<double>> y;
};

// Deterministic in (params, hypothesis, seed); node i draws from its own
// substream so the result is independent of evaluation order.
ChannelDraw sample_channel(const SystemParams& params, Hypothesis hyp, std::uint64_t seed);

inline double energy_statistic(std::complex<double> y) {
    return std::norm(y);
}

// |y_i|^2 for every node of a draw.
std::vector<double> energy_statistics(const ChannelDraw& draw);

} // namespace specsense
