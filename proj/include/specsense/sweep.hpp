#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "specsense/montecarlo.hpp"
#include "specsense/params.hpp"

namespace specsense::sweep {

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class GridParam { snr_db, n_nodes, alpha };

const char* to_string(GridParam p);
GridParam grid_param_from_string(std::string_view name);

struct SweepSpec {
    SystemParams scenario;
    GridParam parameter = GridParam::snr_db;
    std::vector<double> grid;
    std::vector<Strategy> strategies{Strategy::noncoop, Strategy::coop,
                                     Strategy::distributed};
    bool validation = false;
    std::uint64_t master_seed = 20260818;
    long n_trials = 0;           // 0: 1e5, raised to 1e6 when the target rate is in a tail
    long n_latency_episodes = 0; // 0: 2e4
    int threads = 0;             // 0: SPECSENSE_THREADS, else hardware
    void validate() const;       // throws config_error
    SystemParams at(double grid_value) const; // scenario with the swept parameter applied
};

// Everything known about one (grid value, strategy) cell. Simulation fields
// are only filled in validation mode.
struct PointReport {
    GridParam parameter = GridParam::snr_db;
    double grid_value = 0.0;
    Strategy strategy = Strategy::noncoop;

    double p_node = 0.0;        // NCS: slot detection; CS: slot-two detection; DS: NaN
    double p_fusion = 0.0;      // fused H1 detection probability of a round
    double false_alarm = 0.0;   // fused H0 rate of a round
    double slots_expected = 0.0; // renewal expectation (what an episode mean estimates)
    double slots_paper = 0.0;   // stage-literal form; differs for the two-slot protocol
    double energy_total = 0.0;
    double fairness_mu = 0.0;

    // two-slot extras
    double cs_p_fc_t1 = 0.0;
    double cs_p_fc_t2 = 0.0;
    int cs_n_prime = 0;

    std::optional<sim::SimEstimate> p_fusion_sim;
    std::optional<sim::SimEstimate> false_alarm_sim;
    std::optional<sim::SimEstimate> slots_sim;
    std::optional<sim::SimEstimate> energy_sim;
    double cs_mean_misses_sim = 0.0; // mean slot-one misses under H1
    double empirical_mu = 0.0;
    long latency_censored = 0;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<PointReport> rows;
    std::vector<std::string> point_errors; // cells that failed, with the grid point named
};

// Analytic results for one cell.
PointReport analyze_point(const SystemParams& params, GridParam parameter,
                          double grid_value, Strategy strategy);

// Full grid; in validation mode each cell also gets the four simulations.
// Cell failures are collected in point_errors, remaining cells still run.
SweepResult run_sweep(const SweepSpec& spec);

// Fixed 14-column schema, "%.12g" formatting, empty cells for absent values.
void write_csv(const SweepResult& result, std::ostream& out);

struct ValidationSummary {
    std::string text;
    int comparisons = 0;
    int mismatches = 0;
};

// Compares every simulated estimate against its closed form at 3 standard
// errors and renders a per-point report, including the stage-literal versus
// renewal slot expectation of the two-slot protocol.
ValidationSummary render_validation(const SweepResult& result);

struct OrdinalCheck {
    std::string name;
    bool pass = false;
    bool skipped = false;
    std::string detail;
};

struct TableOutcome {
    std::vector<OrdinalCheck> checks;
    bool all_pass = true;
};

// The five qualitative comparisons between the strategies, evaluated from
// the closed forms at a low and a high operating point. Checks are skipped
// (with a notice) unless all three strategies are configured.
TableOutcome table1(const SystemParams& scenario, double low_snr_db, double high_snr_db,
                    const std::vector<Strategy>& strategies);

// Figures renderable from a sweep.csv. Each needs its x axis to be the
// swept column: the _vs_nodes figures need an n_nodes grid, _vs_snr needs
// an snr_db grid.
enum class Figure { slots_vs_nodes, energy_vs_nodes, fairness_vs_nodes, detection_vs_snr };

const char* to_string(Figure f);

// Write one figure's gnuplot script next to sweep.csv in dir and return the
// script file name. Throws config_error naming the figure and the grid
// column it needs when the sweep varies a different parameter.
std::string write_plot_script(const SweepResult& result, Figure figure,
                              const std::string& dir);

// Every figure applicable to the swept parameter. Returns the names written.
std::vector<std::string> write_plot_scripts(const SweepResult& result,
                                            const std::string& dir);

struct FileConfig {
    SweepSpec sweep;
    double table1_low_db = 0.0;
    double table1_high_db = 15.0;
};

// Strict JSON loader: schema_version must be 1, unknown keys are rejected,
// types are checked. Throws config_error.
FileConfig load_config(const std::string& path);
FileConfig parse_config(const std::string& text);

} // namespace specsense::sweep
