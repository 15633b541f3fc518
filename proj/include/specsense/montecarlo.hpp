#pragma once

#include <cstdint>

#include "specsense/params.hpp"

namespace specsense::sim {

// Execution plan for one simulation. Trials are processed in fixed-size
// chunks whose partial results are folded in chunk order, so estimates are
// identical for any thread count.
struct TrialPlan {
    std::uint64_t master_seed = 20260818;
    long n_trials = 100000;
    long chunk = 4096;
    int threads = 0;                       // 0: SPECSENSE_THREADS, else hardware
    long max_attempts_per_episode = 1000000; // latency censor cap
    bool ds_use_incremental = false;       // estimate theta iteratively instead of closed form
};

struct SimEstimate {
    double mean = 0.0;
    double half_width_95 = 0.0; // 1.96 * standard error
    long n_trials = 0;
};

// Detection outcome of independent single-round trials.
struct DetectionSim {
    SimEstimate p;            // success rate of the full round
    SimEstimate p_stage1;     // two-slot protocol: slot-one majority rate; else == p
    double mean_stage1_misses = 0.0; // two-slot protocol: mean nodes missing in slot one
};

// Episode lengths in sensing slots until first detection under H1.
struct LatencySim {
    SimEstimate slots;
    long censored = 0; // episodes cut off at max_attempts_per_episode
};

// Per-round energy split across nodes under H1.
struct EnergySim {
    SimEstimate total;
    double mean_per_node_max = 0.0;
    double mean_per_node_min = 0.0;
    double empirical_mu = 0.0; // mean_per_node_max / mean_per_node_min
};

int resolve_threads(const TrialPlan& plan);

SimEstimate simulate_detection(const SystemParams& params, Strategy strategy,
                               Hypothesis hyp, const TrialPlan& plan);

DetectionSim simulate_detection_detailed(const SystemParams& params, Strategy strategy,
                                         Hypothesis hyp, const TrialPlan& plan);

LatencySim simulate_detection_latency(const SystemParams& params, Strategy strategy,
                                      const TrialPlan& plan);

EnergySim simulate_energy(const SystemParams& params, Strategy strategy,
                          const TrialPlan& plan);

} // namespace specsense::sim
