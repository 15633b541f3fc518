#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "specsense/sweep.hpp"

namespace fs = std::filesystem;
using namespace specsense;

namespace {

int run_sweep_cmd(const sweep::FileConfig& cfg, const std::string& out_dir) {
    fs::create_directories(out_dir);
    sweep::SweepResult result = sweep::run_sweep(cfg.sweep);
    fs::path csv_path = fs::path(out_dir) / "sweep.csv";
    {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << csv_path.string() << "\n";
            return 2;
        }
        sweep::write_csv(result, out);
    }
    std::vector<std::string> scripts = sweep::write_plot_scripts(result, out_dir);
    std::cout << "wrote " << csv_path.string() << " (" << result.rows.size() << " rows)\n";
    for (const std::string& s : scripts)
        std::cout << "wrote " << (fs::path(out_dir) / s).string() << "\n";
    for (const std::string& e : result.point_errors) std::cerr << "point error: " << e << "\n";
    if (!result.point_errors.empty()) return 2;
    if (cfg.sweep.validation) {
        sweep::ValidationSummary summary = sweep::render_validation(result);
        fs::path report_path = fs::path(out_dir) / "validation.txt";
        std::ofstream report(report_path, std::ios::binary);
        report << summary.text;
        std::cout << "wrote " << report_path.string() << " (" << summary.mismatches
                  << " mismatches)\n";
        if (summary.mismatches != 0) return 1;
    }
    return 0;
}

int run_validate_cmd(sweep::FileConfig cfg) {
    cfg.sweep.validation = true;
    sweep::SweepResult result = sweep::run_sweep(cfg.sweep);
    sweep::ValidationSummary summary = sweep::render_validation(result);
    std::cout << summary.text;
    if (!result.point_errors.empty()) return 2;
    return summary.mismatches == 0 ? 0 : 1;
}

int run_table_cmd(const sweep::FileConfig& cfg) {
    sweep::TableOutcome outcome = sweep::table1(cfg.sweep.scenario, cfg.table1_low_db,
                                                cfg.table1_high_db, cfg.sweep.strategies);
    for (const sweep::OrdinalCheck& c : outcome.checks) {
        const char* verdict = c.skipped ? "SKIP" : (c.pass ? "PASS" : "FAIL");
        std::cout << verdict << "  " << c.name << "  [" << c.detail << "]\n";
    }
    std::cout << (outcome.all_pass ? "all executed checks pass" : "some checks fail") << "\n";
    return outcome.all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"closed forms and event simulation for three spectrum sensing strategies"};
    app.fallthrough();
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    long trials = -1;
    std::string format = "csv";
    auto* seed_opt = app.add_option("--seed", seed, "master seed override");
    auto* trials_opt =
        app.add_option("--trials", trials, "simulation trial count override (0 = automatic)");
    app.add_option("--format", format, "output format, only csv is supported");

    std::string sweep_config;
    std::string sweep_out;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "evaluate the grid and write sweep.csv plus plot scripts");
    sweep_cmd->add_option("--config", sweep_config, "JSON config file")->required();
    sweep_cmd->add_option("--out", sweep_out, "output directory")->required();

    std::string validate_config;
    CLI::App* validate_cmd = app.add_subcommand(
        "validate", "cross-check closed forms against the event simulation");
    validate_cmd->add_option("--config", validate_config, "JSON config file")->required();

    std::string table_config;
    CLI::App* table_cmd =
        app.add_subcommand("table1", "qualitative strategy comparison at two operating points");
    table_cmd->add_option("--config", table_config, "JSON config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (format != "csv") {
            std::cerr << "config error: unsupported output format \"" << format << "\"\n";
            return 2;
        }
        if (trials < -1 || trials > 2000000000L) {
            std::cerr << "config error: --trials out of range\n";
            return 2;
        }
        std::string config_path = sweep_cmd->parsed()
                                      ? sweep_config
                                      : (validate_cmd->parsed() ? validate_config : table_config);
        sweep::FileConfig cfg = sweep::load_config(config_path);
        if (seed_opt->count() > 0) cfg.sweep.master_seed = seed;
        if (trials_opt->count() > 0 && trials >= 0) cfg.sweep.n_trials = trials;

        if (sweep_cmd->parsed()) return run_sweep_cmd(cfg, sweep_out);
        if (validate_cmd->parsed()) return run_validate_cmd(cfg);
        return run_table_cmd(cfg);
    } catch (const sweep::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
