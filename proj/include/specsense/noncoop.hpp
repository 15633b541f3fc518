#pragma once

#include "specsense/params.hpp"

namespace specsense::ncs {

struct Analysis {
    double threshold = 0.0;  // per-node energy threshold
    double p_node = 0.0;     // per-node detection probability under H1
    double p_fusion = 0.0;   // strict-majority detection probability
};

// Energy threshold meeting the per-node false alarm target alpha under H0:
// lambda = -2 * sigma_w2 * ln(alpha).
double threshold(double sigma_w2, double alpha);

// Per-node detection probability at that threshold under Rayleigh fading:
// alpha^(sigma_w2 / (sigma_h2 + sigma_w2)).
double node_detection(const SystemParams& params);

// OR-of-majority fusion: probability that strictly more than floor(n/2)
// nodes individually detect. Ties count as missed detection.
double fusion(int n_nodes, double p_node);

Analysis analyze(const SystemParams& params);

} // namespace specsense::ncs
