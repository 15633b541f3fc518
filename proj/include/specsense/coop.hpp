#pragma once

#include "specsense/numerics.hpp"
#include "specsense/params.hpp"

namespace specsense::cs {

// Two-slot protocol analysis. Slot one is plain per-node detection at the
// non-cooperative threshold. Nodes that missed in slot one get a second
// chance in slot two: a partner amplifies and forwards its own observation
// on top of the direct path, which raises the effective channel gain at the
// cost of forwarded noise.
struct Analysis {
    double threshold_t1 = 0.0;   // slot-one energy threshold
    double lambda_t2 = 0.0;      // slot-two threshold in units of 2 * sigma_w2
    double relay_b = 0.0;        // relay_power * relay_gain2, the composite gain
    double p_node_t1 = 0.0;      // per-node detection in slot one
    double p_c = 0.0;            // per-node detection in slot two
    int n_prime = 0;             // slot-two voter count, round((1 - p_node_t1) * n)
    double p_fc_t1 = 0.0;        // majority detection in slot one
    double p_fc_t2 = 0.0;        // unconditional slot-two majority detection
    double p_fc_total = 0.0;     // p_fc_t1 + p_fc_t2
};

// Normalized slot-two threshold: the t solving phi(t; 1, b) = alpha, where
// b = relay_power * relay_gain2. Under H0 the slot-two statistic, scaled by
// 2 * sigma_w2, exceeds t with probability phi(t; 1, b) exactly.
double threshold_t2(double relay_power, double relay_gain2, double alpha,
                    const QuadratureConfig& cfg = {});

// Per-node slot-two detection at that threshold:
// p_c = phi(lambda_t2; 1 + snr, b).
double node2_detection(const SystemParams& params, double lambda_t2,
                       const QuadratureConfig& cfg = {});

// Requires an even node count (slot two pairs each silent node with a
// forwarding partner).
Analysis analyze(const SystemParams& params, const QuadratureConfig& cfg = {});

} // namespace specsense::cs
