#include "specsense/coop.hpp"

#include <cmath>

#include "specsense/noncoop.hpp"

namespace specsense::cs {

double threshold_t2(double relay_power, double relay_gain2, double alpha,
                    const QuadratureConfig& cfg) {
    if (!(relay_power > 0.0)) throw std::invalid_argument("threshold_t2: relay_power must be > 0");
    if (!(relay_gain2 > 0.0)) throw std::invalid_argument("threshold_t2: relay_gain2 must be > 0");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("threshold_t2: alpha must lie in (0, 1)");
    double b = relay_power * relay_gain2;
    double hi = 1.0;
    while (phi(hi, 1.0, b, cfg) > alpha) {
        hi *= 2.0;
        if (hi > 1e12)
            throw numeric_error("threshold_t2: no bracket below 1e12", hi);
    }
    return solve_monotone_decreasing([&](double t) { return phi(t, 1.0, b, cfg); }, alpha,
                                     0.0, hi);
}

double node2_detection(const SystemParams& params, double lambda_t2,
                       const QuadratureConfig& cfg) {
    params.validate();
    if (!(lambda_t2 >= 0.0)) throw std::invalid_argument("node2_detection: threshold must be >= 0");
    double b = params.relay_power * params.relay_gain2;
    return phi(lambda_t2, 1.0 + params.snr(), b, cfg);
}

Analysis analyze(const SystemParams& params, const QuadratureConfig& cfg) {
    params.validate();
    if (params.n_nodes % 2 != 0 || params.n_nodes < 2)
        throw std::invalid_argument("coop analysis requires an even node count >= 2");
    Analysis a;
    a.relay_b = params.relay_power * params.relay_gain2;
    a.threshold_t1 = ncs::threshold(params.sigma_w2, params.alpha);
    a.lambda_t2 = threshold_t2(params.relay_power, params.relay_gain2, params.alpha, cfg);
    a.p_node_t1 = ncs::node_detection(params);
    a.p_c = node2_detection(params, a.lambda_t2, cfg);
    a.n_prime = static_cast<int>(std::lround((1.0 - a.p_node_t1) * params.n_nodes));
    a.p_fc_t1 = binomial_tail_exceeds_half(params.n_nodes, a.p_node_t1);
    a.p_fc_t2 = a.n_prime >= 1
                    ? (1.0 - a.p_fc_t1) * binomial_tail_exceeds_half(a.n_prime, a.p_c)
                    : 0.0;
    a.p_fc_total = a.p_fc_t1 + a.p_fc_t2;
    return a;
}

} // namespace specsense::cs
