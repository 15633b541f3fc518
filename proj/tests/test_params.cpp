#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "specsense/params.hpp"

using namespace specsense;

TEST_CASE("snr conversions round trip") {
    CHECK(Snr::from_db(0.0).linear == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(Snr::from_db(10.0).linear == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(Snr::from_db(-10.0).linear == doctest::Approx(0.1).epsilon(1e-14));
    for (double db : {-13.0, -2.5, 0.0, 7.25, 20.0})
        CHECK(Snr::from_db(db).db() == doctest::Approx(db).epsilon(1e-12));
    CHECK(Snr::from_linear(2.0).linear == 2.0);
    CHECK_THROWS_AS(Snr::from_linear(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Snr::from_linear(-1.0), std::invalid_argument);
}

TEST_CASE("received snr and with_snr agree for any primary power") {
    SystemParams p;
    CHECK(p.snr() == doctest::Approx(1.0));
    p.primary_power = 2.0;
    p.sigma_w2 = 3.0;
    SystemParams q = p.with_snr(Snr::from_db(5.0));
    CHECK(q.snr() == doctest::Approx(std::pow(10.0, 0.5)).epsilon(1e-12));
    CHECK(q.sigma_w2 == 3.0);
    CHECK(q.primary_power == 2.0);
}

TEST_CASE("with_nodes and with_alpha only touch their field") {
    SystemParams p;
    SystemParams q = p.with_nodes(42).with_alpha(0.03);
    CHECK(q.n_nodes == 42);
    CHECK(q.alpha == 0.03);
    CHECK(q.sigma_h2 == p.sigma_h2);
    CHECK(p.n_nodes == 20);
}

TEST_CASE("strategy names") {
    CHECK(std::string(to_string(Strategy::noncoop)) == "NCS");
    CHECK(std::string(to_string(Strategy::coop)) == "CS");
    CHECK(std::string(to_string(Strategy::distributed)) == "DS");
    CHECK(strategy_from_string("NCS") == Strategy::noncoop);
    CHECK(strategy_from_string("coop") == Strategy::coop);
    CHECK(strategy_from_string("distributed") == Strategy::distributed);
    CHECK_THROWS_AS(strategy_from_string("ncs"), std::invalid_argument);
}

TEST_CASE("parameter validation rejects each bad field") {
    SystemParams ok;
    CHECK_NOTHROW(ok.validate());

    auto bad = [](auto&& mutate) {
        SystemParams p;
        mutate(p);
        CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    };
    bad([](SystemParams& p) { p.n_nodes = 0; });
    bad([](SystemParams& p) { p.sigma_h2 = -0.1; });
    bad([](SystemParams& p) { p.sigma_w2 = 0.0; });
    bad([](SystemParams& p) { p.alpha = 0.0; });
    bad([](SystemParams& p) { p.alpha = 1.0; });
    bad([](SystemParams& p) { p.primary_power = 0.0; });
    bad([](SystemParams& p) { p.relay_power = 0.0; });
    bad([](SystemParams& p) { p.relay_gain2 = 0.0; });
    bad([](SystemParams& p) { p.eta = 0.0; });
    bad([](SystemParams& p) { p.n_clusters = 0; });
    bad([](SystemParams& p) { p.n_clusters = 3; }); // does not divide 20
    bad([](SystemParams& p) { p.grad_bound = 0.0; });
    bad([](SystemParams& p) { p.node_threshold = 0.0; });
    bad([](SystemParams& p) { p.energy_log_base = 1.0; });
    bad([](SystemParams& p) { p.theta_init = 1.0 / 0.0; });

    SystemParams zero_fading;
    zero_fading.sigma_h2 = 0.0; // snr 0 is an admissible limit
    CHECK_NOTHROW(zero_fading.validate());
}
