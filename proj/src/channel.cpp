#include "specsense/channel.hpp"

#include "specsense/rng.hpp"

namespace specsense {

ChannelDraw sample_channel(const SystemParams& params, Hypothesis hyp, std::uint64_t seed) {
    params.validate();
    ChannelDraw draw;
    draw.theta = hyp == Hypothesis::present ? 1.0 : 0.0;
    int n = params.n_nodes;
    draw.h.resize(n);
    draw.w.resize(n);
    draw.y.resize(n);
    double amp = params.primary_power * draw.theta;
    for (int i = 0; i < n; ++i) {
        SplitMix64 rng = node_stream(seed, static_cast<std::uint64_t>(i));
        draw.h[i] = rng.cnormal(params.sigma_h2);
        draw.w[i] = rng.cnormal(params.sigma_w2);
        draw.y[i] = amp * draw.h[i] + draw.w[i];
    }
    return draw;
}

std::vector<double> energy_statistics(const ChannelDraw& draw) {
    std::vector<double> t(draw.y.size());
    for (std::size_t i = 0; i < draw.y.size(); ++i)
        t[i] = energy_statistic(draw.y[i]);
    return t;
}

} // namespace specsense
