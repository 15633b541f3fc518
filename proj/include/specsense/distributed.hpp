#pragma once

#include <span>
#include <vector>

#include "specsense/numerics.hpp"
#include "specsense/params.hpp"

namespace specsense::ds {

// Thrown when the incremental pass leaves the admissible region; carries the
// estimate trace up to the failing update.
class divergence_error : public numeric_error {
public:
    divergence_error(const std::string& what, double partial, std::vector<double> trace_)
        : numeric_error(what, partial), trace(std::move(trace_)) {}
    std::vector<double> trace;
};

struct StepConfig {
    enum class Schedule { diminishing, constant };
    Schedule schedule = Schedule::diminishing;
    double step = 0.0;           // 0 picks 1 / (T^2 * n)
    int max_passes = 16000;
    double divergence_guard = 1e9;
    bool record_trace = false;   // keep theta after every node update
};

struct IncrementalResult {
    double estimate = 0.0;
    int passes = 0;
    std::vector<double> trace;   // filled when record_trace is set
};

// Mean squared residual (1/n) * sum_i (t_i - T * theta)^2 of the energy
// measurements t_i against a common scale estimate theta.
double objective(std::span<const double> measurements, double node_threshold, double theta);

// Derivative of one node's residual term with respect to theta:
// -2 * (t_i - T * theta) * T.
double node_gradient(double measurement, double node_threshold, double theta);

// Cycles through the nodes applying theta <- theta - step * g_i. With the
// diminishing schedule (step / pass_index) the estimate converges to the
// closed-form minimizer; a constant step circles a geometrically weighted
// mean of the measurements instead.
IncrementalResult incremental_pass(std::span<const double> measurements,
                                   double node_threshold, const StepConfig& cfg,
                                   double theta_init);

// argmin of the objective: sum(t_i) / (n * T).
double closed_form_estimate(std::span<const double> measurements, double node_threshold);

// Threshold P' on the averaged energy statistic meeting the fused false
// alarm target: P(mean of n H0 energies > P') = alpha.
double calibrate_false_alarm(int n_nodes, double sigma_w2, double alpha);

// Detection probability of the averaged statistic at threshold p_prime
// under H1.
double detection_probability(const SystemParams& params, double p_prime);

// Estimation rounds needed to cross the detection margin from theta_init,
// given per-round progress bounded by grad_bound^2. At least 1.
int iteration_count(double theta_init, double grad_bound);

struct Analysis {
    double p_prime = 0.0;   // averaged-statistic threshold
    double p_d = 0.0;       // fused detection probability
    int k_rounds = 1;       // estimation rounds per detection attempt
};

Analysis analyze(const SystemParams& params);

} // namespace specsense::ds
