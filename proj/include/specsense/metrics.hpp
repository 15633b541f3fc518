#pragma once

#include "specsense/params.hpp"

namespace specsense::metrics {

// Expected sensing slots until first detection. For the two-slot protocol
// two formulas are carried side by side: `paper_literal` charges each stage
// with the reciprocal of its own unconditional success rate and adds the
// stage costs (1/p1 + 2/p2), which double-counts cycles whenever both
// stages can succeed; `expected_slots` is the renewal value
// (2 - p1) / (p1 + p2) that an episode simulation converges to. The two
// agree for the single-stage strategies.
struct AgilityReport {
    Strategy strategy = Strategy::noncoop;
    double expected_slots = 0.0;
    double paper_literal = 0.0;
    bool literal_degenerate = false; // a stage rate was 0 or the first stage always wins
};

// Per-node energy spent in one detection round. mu is the max/min ratio
// across nodes (1 = perfectly even).
struct EnergyReport {
    Strategy strategy = Strategy::noncoop;
    double total = 0.0;
    double per_node_max = 0.0;
    double per_node_min = 0.0;
    double mu = 1.0;
};

// 1 / p, the mean of a geometric waiting time. Requires p in (0, 1].
double expected_slots_geometric(double p);

AgilityReport agility_noncoop(double p_fusion);

// p_fc_t1 and p_fc_t2 are the unconditional per-cycle success rates of the
// two stages (they sum to the total per-cycle detection probability).
AgilityReport agility_coop(double p_fc_t1, double p_fc_t2);

// Each detection attempt costs n_slots_per_round * k_rounds slots and
// succeeds with probability p_d.
AgilityReport agility_distributed(int n_slots_per_round, int k_rounds, double p_d);

EnergyReport energy_noncoop(const SystemParams& params);

// Every node reports once (eta each); nodes that missed in slot one forward
// once more at eta / sqrt(n).
EnergyReport energy_coop(const SystemParams& params);

// Per estimation round every node sends a short update costing
// eta * sqrt(log^2(n) / n) and each of the n_clusters heads reports at eta;
// k_rounds rounds per attempt. Logarithm base is params.energy_log_base.
EnergyReport energy_distributed(const SystemParams& params, int k_rounds);

} // namespace specsense::metrics
