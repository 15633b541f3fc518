#include "specsense/distributed.hpp"

#include <cmath>

namespace specsense::ds {

double objective(std::span<const double> measurements, double node_threshold, double theta) {
    if (measurements.empty()) throw std::invalid_argument("objective: no measurements");
    double acc = 0.0;
    for (double t : measurements) {
        double r = t - node_threshold * theta;
        acc += r * r;
    }
    return acc / static_cast<double>(measurements.size());
}

double node_gradient(double measurement, double node_threshold, double theta) {
    return -2.0 * (measurement - node_threshold * theta) * node_threshold;
}

IncrementalResult incremental_pass(std::span<const double> measurements,
                                   double node_threshold, const StepConfig& cfg,
                                   double theta_init) {
    if (measurements.empty()) throw std::invalid_argument("incremental_pass: no measurements");
    if (!(node_threshold > 0.0))
        throw std::invalid_argument("incremental_pass: node_threshold must be > 0");
    if (cfg.max_passes < 1) throw std::invalid_argument("incremental_pass: max_passes must be >= 1");
    if (cfg.step < 0.0) throw std::invalid_argument("incremental_pass: step must be >= 0");

    // Default base step 1/(T^2 n): under the 1/pass schedule the pass-k
    // contraction is about e^{-2/k}, so the start point fades like k^-2 and
    // the final error is set by the shrinking step itself.
    double n = static_cast<double>(measurements.size());
    double base_step =
        cfg.step > 0.0 ? cfg.step : 1.0 / (node_threshold * node_threshold * n);
    IncrementalResult res;
    res.estimate = theta_init;
    if (cfg.record_trace) res.trace.reserve(measurements.size() * cfg.max_passes);

    for (int pass = 1; pass <= cfg.max_passes; ++pass) {
        double step = cfg.schedule == StepConfig::Schedule::diminishing
                          ? base_step / static_cast<double>(pass)
                          : base_step;
        for (double t : measurements) {
            res.estimate -= step * node_gradient(t, node_threshold, res.estimate);
            if (cfg.record_trace) res.trace.push_back(res.estimate);
            if (!(std::abs(res.estimate) < cfg.divergence_guard))
                throw divergence_error("incremental_pass: estimate left the guard region",
                                       res.estimate, std::move(res.trace));
        }
        res.passes = pass;
    }
    return res;
}

double closed_form_estimate(std::span<const double> measurements, double node_threshold) {
    if (measurements.empty()) throw std::invalid_argument("closed_form_estimate: no measurements");
    if (!(node_threshold > 0.0))
        throw std::invalid_argument("closed_form_estimate: node_threshold must be > 0");
    double sum = 0.0;
    for (double t : measurements) sum += t;
    return sum / (static_cast<double>(measurements.size()) * node_threshold);
}

double calibrate_false_alarm(int n_nodes, double sigma_w2, double alpha) {
    if (n_nodes < 1) throw std::invalid_argument("calibrate_false_alarm: n_nodes must be >= 1");
    if (!(sigma_w2 > 0.0)) throw std::invalid_argument("calibrate_false_alarm: sigma_w2 must be > 0");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("calibrate_false_alarm: alpha must lie in (0, 1)");
    // Sum of n H0 energies over 2 * sigma_w2 is Erlang(n, 1); invert its
    // survival function at alpha.
    double hi = static_cast<double>(n_nodes);
    while (erlang_survival(n_nodes, hi) > alpha) hi *= 2.0;
    double x = solve_monotone_decreasing(
        [n_nodes](double v) { return erlang_survival(n_nodes, v); }, alpha, 0.0, hi);
    return 2.0 * sigma_w2 * x / static_cast<double>(n_nodes);
}

double detection_probability(const SystemParams& params, double p_prime) {
    params.validate();
    if (!(p_prime > 0.0)) throw std::invalid_argument("detection_probability: p_prime must be > 0");
    double mean2 = 2.0 * params.sigma_w2 * (1.0 + params.snr());
    return erlang_survival(params.n_nodes,
                           static_cast<double>(params.n_nodes) * p_prime / mean2);
}

int iteration_count(double theta_init, double grad_bound) {
    if (!(grad_bound > 0.0)) throw std::invalid_argument("iteration_count: grad_bound must be > 0");
    if (!std::isfinite(theta_init)) throw std::invalid_argument("iteration_count: theta_init must be finite");
    double k = std::ceil(std::abs(theta_init - 1.0) / (grad_bound * grad_bound));
    return k < 1.0 ? 1 : static_cast<int>(k);
}

Analysis analyze(const SystemParams& params) {
    params.validate();
    Analysis a;
    a.p_prime = calibrate_false_alarm(params.n_nodes, params.sigma_w2, params.alpha);
    a.p_d = detection_probability(params, a.p_prime);
    a.k_rounds = iteration_count(params.theta_init, params.grad_bound);
    return a;
}

} // namespace specsense::ds
