#include "specsense/noncoop.hpp"

#include <cmath>

#include "specsense/numerics.hpp"

namespace specsense::ncs {

double threshold(double sigma_w2, double alpha) {
    if (!(sigma_w2 > 0.0)) throw std::invalid_argument("threshold: sigma_w2 must be > 0");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("threshold: alpha must lie in (0, 1)");
    return -2.0 * sigma_w2 * std::log(alpha);
}

double node_detection(const SystemParams& params) {
    params.validate();
    // alpha^(1 / (1 + snr)), evaluated through exp/log; with one node the
    // estimation strategy reduces to the same exponential survival.
    return std::exp(std::log(params.alpha) / (1.0 + params.snr()));
}

double fusion(int n_nodes, double p_node) {
    return binomial_tail_exceeds_half(n_nodes, p_node);
}

Analysis analyze(const SystemParams& params) {
    params.validate();
    Analysis a;
    a.threshold = threshold(params.sigma_w2, params.alpha);
    a.p_node = node_detection(params);
    a.p_fusion = fusion(params.n_nodes, a.p_node);
    return a;
}

} // namespace specsense::ncs
