#include "specsense/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <thread>
#include <vector>

#include "specsense/coop.hpp"
#include "specsense/distributed.hpp"
#include "specsense/noncoop.hpp"
#include "specsense/rng.hpp"

namespace specsense::sim {

namespace {

enum class Kind { detect, latency, energy };

std::uint64_t stream_domain(Strategy s, Kind k, Hypothesis hyp) {
    return (static_cast<std::uint64_t>(k) << 4) | (static_cast<std::uint64_t>(s) << 1) |
           (hyp == Hypothesis::present ? 1u : 0u);
}

// Per-run constants hoisted out of the trial loop.
struct Ctx {
    SystemParams p;
    Strategy strat = Strategy::noncoop;
    int n = 0;
    double theta = 0.0;
    double amp = 0.0;            // primary_power * theta
    double lambda_t1 = 0.0;      // slot-one / single-slot energy threshold
    double lambda_t2_phys = 0.0; // slot-two threshold in physical units
    double beta1 = 0.0;          // relay amplification under this hypothesis
    double h12_sigma2 = 0.0;     // per-component variance of the inter-node channel
    int n_prime = 0;             // slot-two voter count under this hypothesis
    double ds_sum_threshold = 0.0;
    int k_rounds = 1;
    int n_slots_per_round = 1;
};

Ctx make_ctx(const SystemParams& params, Strategy strat, Hypothesis hyp) {
    params.validate();
    Ctx c;
    c.p = params;
    c.strat = strat;
    c.n = params.n_nodes;
    c.theta = hyp == Hypothesis::present ? 1.0 : 0.0;
    c.amp = params.primary_power * c.theta;
    switch (strat) {
        case Strategy::noncoop:
            c.lambda_t1 = ncs::threshold(params.sigma_w2, params.alpha);
            break;
        case Strategy::coop: {
            cs::Analysis a = cs::analyze(params);
            c.lambda_t1 = a.threshold_t1;
            c.lambda_t2_phys = 2.0 * params.sigma_w2 * a.lambda_t2;
            // Chosen so the slot-two statistic, normalized by the noise
            // power, has exceedance phi(lambda_t2; 1 + theta * snr, b).
            c.beta1 = params.relay_power / (c.theta * c.theta * params.snr() + 1.0);
            c.h12_sigma2 = 0.5 * params.relay_gain2;
            // The stylized voter count: the expected number of slot-one
            // misses under the active hypothesis, rounded.
            c.n_prime = hyp == Hypothesis::present
                            ? a.n_prime
                            : static_cast<int>(std::lround((1.0 - params.alpha) * c.n));
            break;
        }
        case Strategy::distributed: {
            ds::Analysis d = ds::analyze(params);
            c.ds_sum_threshold = static_cast<double>(c.n) * d.p_prime;
            c.k_rounds = d.k_rounds;
            // Clusters run their path segments in parallel, so one
            // estimation round costs n / n_clusters slots.
            c.n_slots_per_round = c.n / params.n_clusters;
            break;
        }
    }
    return c;
}

inline double node_energy_sample(const Ctx& c, SplitMix64& rng) {
    if (c.amp != 0.0) {
        std::complex<double> h = rng.cnormal(c.p.sigma_h2);
        std::complex<double> y = c.amp * h + rng.cnormal(c.p.sigma_w2);
        return std::norm(y);
    }
    return std::norm(rng.cnormal(c.p.sigma_w2));
}

int vote_round(const Ctx& c, std::uint64_t key, std::uint64_t index_base) {
    int votes = 0;
    for (int i = 0; i < c.n; ++i) {
        SplitMix64 rng = node_stream(key, index_base + static_cast<std::uint64_t>(i));
        votes += node_energy_sample(c, rng) > c.lambda_t1;
    }
    return votes;
}

// Slot two for voter v: the partner's own observation is amplified and
// forwarded on top of a fresh direct observation.
bool relay_vote(const Ctx& c, std::uint64_t key, std::uint64_t index) {
    SplitMix64 rng = node_stream(key, index);
    std::complex<double> direct;
    std::complex<double> forwarded;
    if (c.amp != 0.0) {
        std::complex<double> h_p2 = rng.cnormal(c.p.sigma_h2);
        direct = c.amp * h_p2 + rng.cnormal(c.p.sigma_w2);
        std::complex<double> h12 = rng.cnormal(c.h12_sigma2);
        std::complex<double> h_p1 = rng.cnormal(c.p.sigma_h2);
        std::complex<double> y1 = c.amp * h_p1 + rng.cnormal(c.p.sigma_w2);
        forwarded = std::sqrt(c.beta1) * h12 * y1;
    } else {
        direct = rng.cnormal(c.p.sigma_w2);
        std::complex<double> h12 = rng.cnormal(c.h12_sigma2);
        forwarded = std::sqrt(c.beta1) * h12 * rng.cnormal(c.p.sigma_w2);
    }
    return std::norm(direct + forwarded) > c.lambda_t2_phys;
}

struct CsOutcome {
    bool stage1 = false;
    bool total = false;
    int misses = 0;
};

CsOutcome cs_trial(const Ctx& c, std::uint64_t key, std::uint64_t index_base) {
    CsOutcome out;
    int votes = vote_round(c, key, index_base);
    out.misses = c.n - votes;
    out.stage1 = votes > c.n / 2;
    out.total = out.stage1;
    if (!out.stage1 && c.n_prime >= 1) {
        int votes2 = 0;
        for (int v = 0; v < c.n_prime; ++v)
            votes2 += relay_vote(c, key, index_base + static_cast<std::uint64_t>(c.n + v));
        out.total = votes2 > c.n_prime / 2;
    }
    return out;
}

double ds_energy_sum(const Ctx& c, std::uint64_t key, std::uint64_t index_base) {
    double sum = 0.0;
    for (int i = 0; i < c.n; ++i) {
        SplitMix64 rng = node_stream(key, index_base + static_cast<std::uint64_t>(i));
        sum += node_energy_sample(c, rng);
    }
    return sum;
}

bool ds_trial(const Ctx& c, std::uint64_t key, std::uint64_t index_base, bool incremental) {
    if (!incremental)
        return ds_energy_sum(c, key, index_base) > c.ds_sum_threshold;
    std::vector<double> t(static_cast<std::size_t>(c.n));
    for (int i = 0; i < c.n; ++i) {
        SplitMix64 rng = node_stream(key, index_base + static_cast<std::uint64_t>(i));
        t[static_cast<std::size_t>(i)] = node_energy_sample(c, rng);
    }
    ds::StepConfig cfg;
    double theta_hat =
        ds::incremental_pass(t, c.p.node_threshold, cfg, c.p.theta_init).estimate;
    return theta_hat * c.p.node_threshold * static_cast<double>(c.n) > c.ds_sum_threshold;
}

// Chunked work queue: chunk boundaries and per-chunk accumulation are fixed,
// threads only pick which chunk to run next, and the fold walks chunks in
// order. Estimates are therefore identical for every thread count.
template <class Partial, class TrialFn>
std::vector<Partial> run_chunked(long n_trials, long chunk, int threads, const TrialFn& fn) {
    if (n_trials < 1) throw std::invalid_argument("simulation needs n_trials >= 1");
    if (chunk < 1) throw std::invalid_argument("simulation needs chunk >= 1");
    long n_chunks = (n_trials + chunk - 1) / chunk;
    std::vector<Partial> partials(static_cast<std::size_t>(n_chunks));
    std::atomic<long> next{0};
    auto work = [&]() {
        for (;;) {
            long ci = next.fetch_add(1, std::memory_order_relaxed);
            if (ci >= n_chunks) return;
            Partial acc{};
            long lo = ci * chunk;
            long hi = std::min(n_trials, lo + chunk);
            for (long t = lo; t < hi; ++t) fn(t, acc);
            partials[static_cast<std::size_t>(ci)] = acc;
        }
    };
    int nt = std::min<long>(threads, n_chunks);
    if (nt <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nt));
        for (int i = 0; i < nt; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    return partials;
}

SimEstimate binomial_estimate(long successes, long n) {
    double p = static_cast<double>(successes) / static_cast<double>(n);
    double se = std::sqrt(std::max(0.0, p * (1.0 - p) / static_cast<double>(n)));
    return {p, 1.96 * se, n};
}

// Running mean and second central moment; the raw-moment formula would lose
// every significant digit of the variance when the summand is (nearly)
// constant, as the estimation strategy's deterministic cost is. Chunks are
// pooled in index order, so estimates stay independent of the thread count.
struct MomentAcc {
    long n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }

    void merge(const MomentAcc& o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        double d = o.mean - mean;
        long total = n + o.n;
        mean += d * static_cast<double>(o.n) / static_cast<double>(total);
        m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) /
                         static_cast<double>(total);
        n = total;
    }

    SimEstimate estimate() const {
        double var = n > 1 ? std::max(0.0, m2 / static_cast<double>(n - 1)) : 0.0;
        return {mean, 1.96 * std::sqrt(var / static_cast<double>(n)), n};
    }
};

} // namespace

int resolve_threads(const TrialPlan& plan) {
    if (plan.threads > 0) return plan.threads;
    if (const char* env = std::getenv("SPECSENSE_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 4096) return static_cast<int>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

DetectionSim simulate_detection_detailed(const SystemParams& params, Strategy strategy,
                                         Hypothesis hyp, const TrialPlan& plan) {
    Ctx c = make_ctx(params, strategy, hyp);
    std::uint64_t dom = stream_domain(strategy, Kind::detect, hyp);
    struct Partial {
        long succ = 0;
        long succ1 = 0;
        double misses = 0.0;
    };
    auto partials = run_chunked<Partial>(
        plan.n_trials, plan.chunk, resolve_threads(plan), [&](long t, Partial& acc) {
            std::uint64_t key = trial_key(plan.master_seed, dom, static_cast<std::uint64_t>(t));
            switch (c.strat) {
                case Strategy::noncoop: {
                    bool s = vote_round(c, key, 0) > c.n / 2;
                    acc.succ += s;
                    acc.succ1 += s;
                    break;
                }
                case Strategy::coop: {
                    CsOutcome o = cs_trial(c, key, 0);
                    acc.succ += o.total;
                    acc.succ1 += o.stage1;
                    acc.misses += o.misses;
                    break;
                }
                case Strategy::distributed: {
                    bool s = ds_trial(c, key, 0, plan.ds_use_incremental);
                    acc.succ += s;
                    acc.succ1 += s;
                    break;
                }
            }
        });
    long succ = 0;
    long succ1 = 0;
    double misses = 0.0;
    for (const auto& pa : partials) {
        succ += pa.succ;
        succ1 += pa.succ1;
        misses += pa.misses;
    }
    DetectionSim out;
    out.p = binomial_estimate(succ, plan.n_trials);
    out.p_stage1 = binomial_estimate(succ1, plan.n_trials);
    out.mean_stage1_misses = misses / static_cast<double>(plan.n_trials);
    return out;
}

SimEstimate simulate_detection(const SystemParams& params, Strategy strategy, Hypothesis hyp,
                               const TrialPlan& plan) {
    return simulate_detection_detailed(params, strategy, hyp, plan).p;
}

LatencySim simulate_detection_latency(const SystemParams& params, Strategy strategy,
                                      const TrialPlan& plan) {
    Ctx c = make_ctx(params, strategy, Hypothesis::present);
    std::uint64_t dom = stream_domain(strategy, Kind::latency, Hypothesis::present);
    long cap = std::max(1l, plan.max_attempts_per_episode);
    struct Partial {
        MomentAcc slots;
        long censored = 0;
    };
    auto partials = run_chunked<Partial>(
        plan.n_trials, plan.chunk, resolve_threads(plan), [&](long t, Partial& acc) {
            std::uint64_t key = trial_key(plan.master_seed, dom, static_cast<std::uint64_t>(t));
            double slots = 0.0;
            bool done = false;
            switch (c.strat) {
                case Strategy::noncoop: {
                    for (long a = 0; a < cap && !done; ++a) {
                        if (vote_round(c, key, static_cast<std::uint64_t>(a) *
                                                   static_cast<std::uint64_t>(c.n)) >
                            c.n / 2) {
                            slots = static_cast<double>(a + 1);
                            done = true;
                        }
                    }
                    if (!done) slots = static_cast<double>(cap);
                    break;
                }
                case Strategy::coop: {
                    std::uint64_t stride = static_cast<std::uint64_t>(c.n + c.n_prime);
                    for (long a = 0; a < cap && !done; ++a) {
                        std::uint64_t base = static_cast<std::uint64_t>(a) * stride;
                        int votes = vote_round(c, key, base);
                        if (votes > c.n / 2) {
                            slots = 2.0 * static_cast<double>(a) + 1.0;
                            done = true;
                            break;
                        }
                        if (c.n_prime >= 1) {
                            int votes2 = 0;
                            for (int v = 0; v < c.n_prime; ++v)
                                votes2 += relay_vote(c, key,
                                                     base + static_cast<std::uint64_t>(c.n + v));
                            if (votes2 > c.n_prime / 2) {
                                slots = 2.0 * static_cast<double>(a + 1);
                                done = true;
                            }
                        }
                    }
                    if (!done) slots = 2.0 * static_cast<double>(cap);
                    break;
                }
                case Strategy::distributed: {
                    double per_attempt = static_cast<double>(c.n_slots_per_round) *
                                         static_cast<double>(c.k_rounds);
                    for (long a = 0; a < cap && !done; ++a) {
                        if (ds_trial(c, key,
                                     static_cast<std::uint64_t>(a) *
                                         static_cast<std::uint64_t>(c.n),
                                     false)) {
                            slots = static_cast<double>(a + 1) * per_attempt;
                            done = true;
                        }
                    }
                    if (!done) slots = static_cast<double>(cap) * per_attempt;
                    break;
                }
            }
            if (!done) acc.censored += 1;
            acc.slots.add(slots);
        });
    MomentAcc slots;
    long censored = 0;
    for (const auto& pa : partials) {
        slots.merge(pa.slots);
        censored += pa.censored;
    }
    LatencySim out;
    out.slots = slots.estimate();
    out.censored = censored;
    return out;
}

EnergySim simulate_energy(const SystemParams& params, Strategy strategy,
                          const TrialPlan& plan) {
    if (strategy == Strategy::distributed && params.n_nodes < 2)
        throw std::invalid_argument("simulate_energy: distributed strategy needs >= 2 nodes");
    Ctx c = make_ctx(params, strategy, Hypothesis::present);
    std::uint64_t dom = stream_domain(strategy, Kind::energy, Hypothesis::present);
    double eta = params.eta;
    double n = static_cast<double>(params.n_nodes);
    struct Partial {
        MomentAcc tot;
        double mx = 0.0;
        double mn = 0.0;
    };
    auto partials = run_chunked<Partial>(
        plan.n_trials, plan.chunk, resolve_threads(plan), [&](long t, Partial& acc) {
            std::uint64_t key = trial_key(plan.master_seed, dom, static_cast<std::uint64_t>(t));
            double tot = 0.0;
            double mx = 0.0;
            double mn = 0.0;
            switch (c.strat) {
                case Strategy::noncoop:
                    tot = eta * n;
                    mx = eta;
                    mn = eta;
                    break;
                case Strategy::coop: {
                    // Every node reports once; the inter-node hop is billed
                    // per slot-one detection, so the bill grows with snr.
                    int votes = vote_round(c, key, 0);
                    double hop = eta / std::sqrt(n);
                    tot = eta * n + static_cast<double>(votes) * hop;
                    mx = votes > 0 ? eta + hop : eta;
                    mn = votes < c.n ? eta : eta + hop;
                    break;
                }
                case Strategy::distributed: {
                    double log_n = std::log(n) / std::log(c.p.energy_log_base);
                    double d = log_n / std::sqrt(n);
                    double k = static_cast<double>(c.k_rounds);
                    tot = k * (n * eta * d + static_cast<double>(c.p.n_clusters) * eta);
                    mx = k * (eta * d + eta);
                    mn = k * eta * d;
                    break;
                }
            }
            acc.tot.add(tot);
            acc.mx += mx;
            acc.mn += mn;
        });
    MomentAcc tot;
    double mx = 0.0;
    double mn = 0.0;
    for (const auto& pa : partials) {
        tot.merge(pa.tot);
        mx += pa.mx;
        mn += pa.mn;
    }
    EnergySim out;
    out.total = tot.estimate();
    out.mean_per_node_max = mx / static_cast<double>(plan.n_trials);
    out.mean_per_node_min = mn / static_cast<double>(plan.n_trials);
    out.empirical_mu = out.mean_per_node_max / out.mean_per_node_min;
    return out;
}

} // namespace specsense::sim
