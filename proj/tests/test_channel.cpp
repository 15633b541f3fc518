#include "doctest.h"

#include <cmath>

#include "specsense/channel.hpp"

using namespace specsense;

namespace {

SystemParams many_nodes(int n) {
    SystemParams p;
    p.n_nodes = n;
    p.n_clusters = 1;
    return p;
}

} // namespace

TEST_CASE("channel draws are deterministic in the seed") {
    SystemParams p = many_nodes(8);
    ChannelDraw a = sample_channel(p, Hypothesis::present, 5);
    ChannelDraw b = sample_channel(p, Hypothesis::present, 5);
    ChannelDraw c = sample_channel(p, Hypothesis::present, 6);
    for (int i = 0; i < 8; ++i) {
        CHECK(a.y[i] == b.y[i]);
        CHECK(a.h[i] == b.h[i]);
    }
    CHECK(a.y[0] != c.y[0]);
}

TEST_CASE("absent primary leaves pure noise") {
    SystemParams p = many_nodes(16);
    ChannelDraw d = sample_channel(p, Hypothesis::absent, 77);
    CHECK(d.theta == 0.0);
    for (int i = 0; i < 16; ++i) CHECK(d.y[i] == d.w[i]);
}

TEST_CASE("zero fading variance degenerates to the noise-only channel") {
    SystemParams p = many_nodes(16);
    p.sigma_h2 = 0.0;
    ChannelDraw d = sample_channel(p, Hypothesis::present, 42);
    CHECK(d.theta == 1.0);
    for (int i = 0; i < 16; ++i) {
        CHECK(d.h[i] == std::complex<double>(0.0, 0.0));
        CHECK(d.y[i] == d.w[i]);
    }
}

TEST_CASE("h0 energy statistic is exponential with mean 2 sigma_w2") {
    const int n = 200000;
    SystemParams p = many_nodes(n);
    p.sigma_w2 = 1.0;
    ChannelDraw d = sample_channel(p, Hypothesis::absent, 20260818);
    std::vector<double> t = energy_statistics(d);

    double mean = 0.0;
    for (double v : t) mean += v;
    mean /= n;
    // Exp(2): sd 2
    CHECK(std::abs(mean - 2.0) < 4.0 * 2.0 / std::sqrt((double)n));

    for (double thr : {1.0, 2.0, 4.0}) {
        long hits = 0;
        for (double v : t) hits += v > thr;
        double want = std::exp(-thr / 2.0);
        double se = std::sqrt(want * (1.0 - want) / n);
        CHECK(std::abs((double)hits / n - want) < 4.0 * se);
    }
}

TEST_CASE("h1 energy statistic is exponential with mean 2 (1 + snr)") {
    const int n = 200000;
    SystemParams p = many_nodes(n); // snr 1 at the defaults
    ChannelDraw d = sample_channel(p, Hypothesis::present, 31337);
    std::vector<double> t = energy_statistics(d);

    double mean = 0.0;
    for (double v : t) mean += v;
    mean /= n;
    CHECK(std::abs(mean - 4.0) < 4.0 * 4.0 / std::sqrt((double)n));

    long hits = 0;
    for (double v : t) hits += v > 4.0;
    double want = std::exp(-1.0);
    double se = std::sqrt(want * (1.0 - want) / n);
    CHECK(std::abs((double)hits / n - want) < 4.0 * se);
}
