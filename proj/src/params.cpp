#include "specsense/params.hpp"

#include <cmath>

namespace specsense {

Snr Snr::from_db(double db) {
    return Snr{std::pow(10.0, db / 10.0)};
}

Snr Snr::from_linear(double v) {
    if (!(v > 0.0)) throw std::invalid_argument("SNR must be positive");
    return Snr{v};
}

double Snr::db() const {
    return 10.0 * std::log10(linear);
}

void SystemParams::validate() const {
    if (n_nodes < 1) throw std::invalid_argument("n_nodes must be >= 1");
    if (!(sigma_h2 >= 0.0)) throw std::invalid_argument("sigma_h2 must be >= 0");
    if (!(sigma_w2 > 0.0)) throw std::invalid_argument("sigma_w2 must be > 0");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    if (!(primary_power > 0.0)) throw std::invalid_argument("primary_power must be > 0");
    if (!(relay_power > 0.0)) throw std::invalid_argument("relay_power must be > 0");
    if (!(relay_gain2 > 0.0)) throw std::invalid_argument("relay_gain2 must be > 0");
    if (!(eta > 0.0)) throw std::invalid_argument("eta must be > 0");
    if (n_clusters < 1) throw std::invalid_argument("n_clusters must be >= 1");
    if (n_nodes % n_clusters != 0)
        throw std::invalid_argument("n_clusters must divide n_nodes");
    if (!(grad_bound > 0.0)) throw std::invalid_argument("grad_bound must be > 0");
    if (!(node_threshold > 0.0)) throw std::invalid_argument("node_threshold must be > 0");
    if (!(energy_log_base > 1.0)) throw std::invalid_argument("energy_log_base must be > 1");
    if (!std::isfinite(theta_init)) throw std::invalid_argument("theta_init must be finite");
}

} // namespace specsense
