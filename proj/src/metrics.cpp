#include "specsense/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "specsense/noncoop.hpp"

namespace specsense::metrics {

double expected_slots_geometric(double p) {
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("expected_slots_geometric: p must lie in (0, 1]");
    return 1.0 / p;
}

AgilityReport agility_noncoop(double p_fusion) {
    AgilityReport r;
    r.strategy = Strategy::noncoop;
    r.expected_slots = expected_slots_geometric(p_fusion);
    r.paper_literal = r.expected_slots;
    return r;
}

AgilityReport agility_coop(double p_fc_t1, double p_fc_t2) {
    if (!(p_fc_t1 >= 0.0 && p_fc_t1 <= 1.0))
        throw std::invalid_argument("agility_coop: p_fc_t1 must lie in [0, 1]");
    if (!(p_fc_t2 >= 0.0 && p_fc_t2 <= 1.0 - p_fc_t1 + 1e-12))
        throw std::invalid_argument("agility_coop: p_fc_t2 must lie in [0, 1 - p_fc_t1]");
    double p_total = p_fc_t1 + p_fc_t2;
    if (!(p_total > 0.0))
        throw std::invalid_argument("agility_coop: detection never succeeds");
    AgilityReport r;
    r.strategy = Strategy::coop;
    // Renewal argument: a cycle lasts 2 slots unless stage one already
    // succeeded (probability p1 saves one slot), and ends the search with
    // probability p1 + p2.
    r.expected_slots = (2.0 - p_fc_t1) / p_total;
    if (p_fc_t1 > 0.0 && p_fc_t2 > 0.0) {
        r.paper_literal = 1.0 / p_fc_t1 + 2.0 / p_fc_t2;
    } else {
        r.paper_literal = std::numeric_limits<double>::infinity();
        r.literal_degenerate = true;
    }
    return r;
}

AgilityReport agility_distributed(int n_slots_per_round, int k_rounds, double p_d) {
    if (n_slots_per_round < 1)
        throw std::invalid_argument("agility_distributed: n_slots_per_round must be >= 1");
    if (k_rounds < 1) throw std::invalid_argument("agility_distributed: k_rounds must be >= 1");
    AgilityReport r;
    r.strategy = Strategy::distributed;
    r.expected_slots = static_cast<double>(n_slots_per_round) *
                       static_cast<double>(k_rounds) * expected_slots_geometric(p_d);
    r.paper_literal = r.expected_slots;
    return r;
}

EnergyReport energy_noncoop(const SystemParams& params) {
    params.validate();
    EnergyReport r;
    r.strategy = Strategy::noncoop;
    r.total = params.eta * static_cast<double>(params.n_nodes);
    r.per_node_max = params.eta;
    r.per_node_min = params.eta;
    r.mu = 1.0;
    return r;
}

EnergyReport energy_coop(const SystemParams& params) {
    params.validate();
    if (params.n_nodes % 2 != 0 || params.n_nodes < 2)
        throw std::invalid_argument("energy_coop: even node count >= 2 required");
    double n = static_cast<double>(params.n_nodes);
    // The inter-node relay leg is billed at rate node_detection, so the
    // total climbs from eta*N toward eta*(N + sqrt(N)) as snr improves.
    double relay_rate = ncs::node_detection(params);
    EnergyReport r;
    r.strategy = Strategy::coop;
    r.total = params.eta * n + relay_rate * params.eta * std::sqrt(n);
    r.per_node_max = params.eta * (1.0 + 1.0 / std::sqrt(n));
    r.per_node_min = params.eta;
    r.mu = r.per_node_max / r.per_node_min;
    return r;
}

EnergyReport energy_distributed(const SystemParams& params, int k_rounds) {
    params.validate();
    if (params.n_nodes < 2)
        throw std::invalid_argument("energy_distributed: node count >= 2 required");
    if (k_rounds < 1) throw std::invalid_argument("energy_distributed: k_rounds must be >= 1");
    double n = static_cast<double>(params.n_nodes);
    double k = static_cast<double>(k_rounds);
    double log_n = std::log(n) / std::log(params.energy_log_base);
    double d = log_n / std::sqrt(n); // sqrt(log^2(n) / n)
    EnergyReport r;
    r.strategy = Strategy::distributed;
    r.total = k * n * params.eta * d + k * static_cast<double>(params.n_clusters) * params.eta;
    r.per_node_max = k * (params.eta * d + params.eta);
    r.per_node_min = k * params.eta * d;
    r.mu = r.per_node_max / r.per_node_min;
    return r;
}

} // namespace specsense::metrics
