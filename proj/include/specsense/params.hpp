#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace specsense {

enum class Hypothesis { absent, present };

enum class Strategy { noncoop, coop, distributed };

inline const char* to_string(Strategy s) {
    switch (s) {
        case Strategy::noncoop: return "NCS";
        case Strategy::coop: return "CS";
        case Strategy::distributed: return "DS";
    }
    return "?";
}

inline Strategy strategy_from_string(std::string_view name) {
    if (name == "NCS" || name == "noncoop") return Strategy::noncoop;
    if (name == "CS" || name == "coop") return Strategy::coop;
    if (name == "DS" || name == "distributed") return Strategy::distributed;
    throw std::invalid_argument("unknown strategy: " + std::string(name));
}

// Linear SNR is sigma_h2 / sigma_w2.
struct Snr {
    double linear = 1.0;

    static Snr from_db(double db);
    static Snr from_linear(double v);
    double db() const;
};

// Scenario parameters shared by every strategy.
//
// sigma_h2 and sigma_w2 are per-component variances of the circularly
// symmetric complex channel and noise terms, so |h|^2 is exponential with
// mean 2*sigma_h2 and the H0 energy statistic is exponential with mean
// 2*sigma_w2.
struct SystemParams {
    int n_nodes = 20;
    double sigma_h2 = 1.0;
    double sigma_w2 = 1.0;
    double alpha = 0.1;          // per-node false alarm target
    double primary_power = 1.0;  // amplitude applied to the primary symbol
    double relay_power = 0.5;    // forwarded power budget, units of total noise power
    double relay_gain2 = 0.05;   // mean squared magnitude of the inter-node channel
    double eta = 1.0;            // energy of one result report
    int n_clusters = 1;          // cluster heads reporting per estimation round
    double grad_bound = 0.75;    // gradient magnitude bound used by the iteration count
    double theta_init = 0.0;     // initial estimate for the incremental pass
    double node_threshold = 1.0; // per-node weight T_i in the estimation objective
    double energy_log_base = 10.0;

    // Received SNR at a sensing node.
    double snr() const { return primary_power * primary_power * sigma_h2 / sigma_w2; }

    // Sets sigma_h2 so that snr() == s.linear.
    SystemParams with_snr(Snr s) const {
        SystemParams p = *this;
        p.sigma_h2 = s.linear * p.sigma_w2 / (p.primary_power * p.primary_power);
        return p;
    }

    SystemParams with_nodes(int n) const {
        SystemParams p = *this;
        p.n_nodes = n;
        return p;
    }

    SystemParams with_alpha(double a) const {
        SystemParams p = *this;
        p.alpha = a;
        return p;
    }

    // Throws std::invalid_argument on the first violated constraint.
    void validate() const;
};

} // namespace specsense
