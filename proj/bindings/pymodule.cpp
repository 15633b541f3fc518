#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "specsense/channel.hpp"
#include "specsense/coop.hpp"
#include "specsense/distributed.hpp"
#include "specsense/metrics.hpp"
#include "specsense/montecarlo.hpp"
#include "specsense/noncoop.hpp"
#include "specsense/numerics.hpp"
#include "specsense/params.hpp"

namespace py = pybind11;
using namespace specsense;

PYBIND11_MODULE(_core, m) {
    m.doc() = "closed forms and event simulation for three spectrum sensing strategies";

    py::enum_<Hypothesis>(m, "Hypothesis")
        .value("absent", Hypothesis::absent)
        .value("present", Hypothesis::present);

    py::enum_<Strategy>(m, "Strategy")
        .value("noncoop", Strategy::noncoop)
        .value("coop", Strategy::coop)
        .value("distributed", Strategy::distributed);
    m.def("strategy_from_string", &strategy_from_string, py::arg("name"));
    m.def(
        "strategy_name", [](Strategy s) { return std::string(to_string(s)); },
        py::arg("strategy"));

    py::class_<Snr>(m, "Snr")
        .def_static("from_db", &Snr::from_db, py::arg("db"))
        .def_static("from_linear", &Snr::from_linear, py::arg("linear"))
        .def_readonly("linear", &Snr::linear)
        .def("db", &Snr::db)
        .def("__repr__", [](const Snr& s) {
            return "Snr(linear=" + std::to_string(s.linear) + ")";
        });

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init<>())
        .def_readwrite("n_nodes", &SystemParams::n_nodes)
        .def_readwrite("sigma_h2", &SystemParams::sigma_h2)
        .def_readwrite("sigma_w2", &SystemParams::sigma_w2)
        .def_readwrite("alpha", &SystemParams::alpha)
        .def_readwrite("primary_power", &SystemParams::primary_power)
        .def_readwrite("relay_power", &SystemParams::relay_power)
        .def_readwrite("relay_gain2", &SystemParams::relay_gain2)
        .def_readwrite("eta", &SystemParams::eta)
        .def_readwrite("n_clusters", &SystemParams::n_clusters)
        .def_readwrite("grad_bound", &SystemParams::grad_bound)
        .def_readwrite("theta_init", &SystemParams::theta_init)
        .def_readwrite("node_threshold", &SystemParams::node_threshold)
        .def_readwrite("energy_log_base", &SystemParams::energy_log_base)
        .def("snr", &SystemParams::snr)
        .def("with_snr", &SystemParams::with_snr, py::arg("snr"))
        .def("with_nodes", &SystemParams::with_nodes, py::arg("n_nodes"))
        .def("with_alpha", &SystemParams::with_alpha, py::arg("alpha"))
        .def("validate", &SystemParams::validate);

    // special functions
    m.def(
        "phi", [](double t, double a, double b) { return phi(t, a, b); }, py::arg("t"),
        py::arg("a"), py::arg("b"),
        "integral over h >= 0 of exp(-h - t / (a + b*h)) dh");
    m.def("erlang_survival", &erlang_survival, py::arg("n"), py::arg("x"));
    m.def("binomial_tail_exceeds_half", &binomial_tail_exceeds_half, py::arg("n"),
          py::arg("p"), "P(more than n/2 of n independent trials at rate p succeed)");

    // single-slot strategy
    auto ncs_mod = m.def_submodule("ncs", "non-cooperative single-slot sensing");
    py::class_<ncs::Analysis>(ncs_mod, "Analysis")
        .def_readonly("threshold", &ncs::Analysis::threshold)
        .def_readonly("p_node", &ncs::Analysis::p_node)
        .def_readonly("p_fusion", &ncs::Analysis::p_fusion);
    ncs_mod.def("threshold", &ncs::threshold, py::arg("sigma_w2"), py::arg("alpha"));
    ncs_mod.def("node_detection", &ncs::node_detection, py::arg("params"));
    ncs_mod.def("fusion", &ncs::fusion, py::arg("n_nodes"), py::arg("p_node"));
    ncs_mod.def("analyze", &ncs::analyze, py::arg("params"));

    // two-slot relay strategy
    auto cs_mod = m.def_submodule("cs", "cooperative two-slot relay sensing");
    py::class_<cs::Analysis>(cs_mod, "Analysis")
        .def_readonly("threshold_t1", &cs::Analysis::threshold_t1)
        .def_readonly("lambda_t2", &cs::Analysis::lambda_t2)
        .def_readonly("relay_b", &cs::Analysis::relay_b)
        .def_readonly("p_node_t1", &cs::Analysis::p_node_t1)
        .def_readonly("p_c", &cs::Analysis::p_c)
        .def_readonly("n_prime", &cs::Analysis::n_prime)
        .def_readonly("p_fc_t1", &cs::Analysis::p_fc_t1)
        .def_readonly("p_fc_t2", &cs::Analysis::p_fc_t2)
        .def_readonly("p_fc_total", &cs::Analysis::p_fc_total);
    cs_mod.def(
        "threshold_t2",
        [](double relay_power, double relay_gain2, double alpha) {
            return cs::threshold_t2(relay_power, relay_gain2, alpha);
        },
        py::arg("relay_power"), py::arg("relay_gain2"), py::arg("alpha"));
    cs_mod.def(
        "node2_detection",
        [](const SystemParams& params, double lambda_t2) {
            return cs::node2_detection(params, lambda_t2);
        },
        py::arg("params"), py::arg("lambda_t2"));
    cs_mod.def(
        "analyze", [](const SystemParams& params) { return cs::analyze(params); },
        py::arg("params"));

    // distributed estimation strategy
    auto ds_mod = m.def_submodule("ds", "distributed incremental estimation sensing");
    py::class_<ds::StepConfig> step_cfg(ds_mod, "StepConfig");
    py::enum_<ds::StepConfig::Schedule>(step_cfg, "Schedule")
        .value("diminishing", ds::StepConfig::Schedule::diminishing)
        .value("constant", ds::StepConfig::Schedule::constant);
    step_cfg.def(py::init<>())
        .def_readwrite("schedule", &ds::StepConfig::schedule)
        .def_readwrite("step", &ds::StepConfig::step)
        .def_readwrite("max_passes", &ds::StepConfig::max_passes)
        .def_readwrite("divergence_guard", &ds::StepConfig::divergence_guard)
        .def_readwrite("record_trace", &ds::StepConfig::record_trace);
    py::class_<ds::IncrementalResult>(ds_mod, "IncrementalResult")
        .def_readonly("estimate", &ds::IncrementalResult::estimate)
        .def_readonly("passes", &ds::IncrementalResult::passes)
        .def_readonly("trace", &ds::IncrementalResult::trace);
    py::class_<ds::Analysis>(ds_mod, "Analysis")
        .def_readonly("p_prime", &ds::Analysis::p_prime)
        .def_readonly("p_d", &ds::Analysis::p_d)
        .def_readonly("k_rounds", &ds::Analysis::k_rounds);
    ds_mod.def(
        "objective",
        [](const std::vector<double>& t, double thr, double theta) {
            return ds::objective(t, thr, theta);
        },
        py::arg("measurements"), py::arg("node_threshold"), py::arg("theta"));
    ds_mod.def("node_gradient", &ds::node_gradient, py::arg("measurement"),
               py::arg("node_threshold"), py::arg("theta"));
    ds_mod.def(
        "incremental_pass",
        [](const std::vector<double>& t, double thr, const ds::StepConfig& cfg,
           double theta_init) { return ds::incremental_pass(t, thr, cfg, theta_init); },
        py::arg("measurements"), py::arg("node_threshold"),
        py::arg("config") = ds::StepConfig{}, py::arg("theta_init") = 0.0);
    ds_mod.def(
        "closed_form_estimate",
        [](const std::vector<double>& t, double thr) {
            return ds::closed_form_estimate(t, thr);
        },
        py::arg("measurements"), py::arg("node_threshold"));
    ds_mod.def("calibrate_false_alarm", &ds::calibrate_false_alarm, py::arg("n_nodes"),
               py::arg("sigma_w2"), py::arg("alpha"));
    ds_mod.def("detection_probability", &ds::detection_probability, py::arg("params"),
               py::arg("p_prime"));
    ds_mod.def("iteration_count", &ds::iteration_count, py::arg("theta_init"),
               py::arg("grad_bound"));
    ds_mod.def("analyze", &ds::analyze, py::arg("params"));

    // slot, energy and fairness metrics
    auto metrics_mod = m.def_submodule("metrics", "agility, energy and fairness metrics");
    py::class_<metrics::AgilityReport>(metrics_mod, "AgilityReport")
        .def_readonly("strategy", &metrics::AgilityReport::strategy)
        .def_readonly("expected_slots", &metrics::AgilityReport::expected_slots)
        .def_readonly("paper_literal", &metrics::AgilityReport::paper_literal)
        .def_readonly("literal_degenerate", &metrics::AgilityReport::literal_degenerate);
    py::class_<metrics::EnergyReport>(metrics_mod, "EnergyReport")
        .def_readonly("strategy", &metrics::EnergyReport::strategy)
        .def_readonly("total", &metrics::EnergyReport::total)
        .def_readonly("per_node_max", &metrics::EnergyReport::per_node_max)
        .def_readonly("per_node_min", &metrics::EnergyReport::per_node_min)
        .def_readonly("mu", &metrics::EnergyReport::mu);
    metrics_mod.def("expected_slots_geometric", &metrics::expected_slots_geometric,
                    py::arg("p"));
    metrics_mod.def("agility_noncoop", &metrics::agility_noncoop, py::arg("p_fusion"));
    metrics_mod.def("agility_coop", &metrics::agility_coop, py::arg("p_fc_t1"),
                    py::arg("p_fc_t2"));
    metrics_mod.def("agility_distributed", &metrics::agility_distributed,
                    py::arg("n_slots_per_round"), py::arg("k_rounds"), py::arg("p_d"));
    metrics_mod.def("energy_noncoop", &metrics::energy_noncoop, py::arg("params"));
    metrics_mod.def("energy_coop", &metrics::energy_coop, py::arg("params"));
    metrics_mod.def("energy_distributed", &metrics::energy_distributed, py::arg("params"),
                    py::arg("k_rounds"));

    // event simulation
    auto sim_mod = m.def_submodule("sim", "seeded Monte Carlo event simulation");
    py::class_<sim::TrialPlan>(sim_mod, "TrialPlan")
        .def(py::init<>())
        .def_readwrite("master_seed", &sim::TrialPlan::master_seed)
        .def_readwrite("n_trials", &sim::TrialPlan::n_trials)
        .def_readwrite("chunk", &sim::TrialPlan::chunk)
        .def_readwrite("threads", &sim::TrialPlan::threads)
        .def_readwrite("max_attempts_per_episode", &sim::TrialPlan::max_attempts_per_episode)
        .def_readwrite("ds_use_incremental", &sim::TrialPlan::ds_use_incremental);
    py::class_<sim::SimEstimate>(sim_mod, "SimEstimate")
        .def_readonly("mean", &sim::SimEstimate::mean)
        .def_readonly("half_width_95", &sim::SimEstimate::half_width_95)
        .def_readonly("n_trials", &sim::SimEstimate::n_trials)
        .def("__repr__", [](const sim::SimEstimate& e) {
            return "SimEstimate(mean=" + std::to_string(e.mean) + ", half_width_95=" +
                   std::to_string(e.half_width_95) + ", n_trials=" +
                   std::to_string(e.n_trials) + ")";
        });
    py::class_<sim::DetectionSim>(sim_mod, "DetectionSim")
        .def_readonly("p", &sim::DetectionSim::p)
        .def_readonly("p_stage1", &sim::DetectionSim::p_stage1)
        .def_readonly("mean_stage1_misses", &sim::DetectionSim::mean_stage1_misses);
    py::class_<sim::LatencySim>(sim_mod, "LatencySim")
        .def_readonly("slots", &sim::LatencySim::slots)
        .def_readonly("censored", &sim::LatencySim::censored);
    py::class_<sim::EnergySim>(sim_mod, "EnergySim")
        .def_readonly("total", &sim::EnergySim::total)
        .def_readonly("mean_per_node_max", &sim::EnergySim::mean_per_node_max)
        .def_readonly("mean_per_node_min", &sim::EnergySim::mean_per_node_min)
        .def_readonly("empirical_mu", &sim::EnergySim::empirical_mu);
    sim_mod.def("resolve_threads", &sim::resolve_threads, py::arg("plan"));
    sim_mod.def("simulate_detection", &sim::simulate_detection, py::arg("params"),
                py::arg("strategy"), py::arg("hypothesis"), py::arg("plan"),
                py::call_guard<py::gil_scoped_release>());
    sim_mod.def("simulate_detection_detailed", &sim::simulate_detection_detailed,
                py::arg("params"), py::arg("strategy"), py::arg("hypothesis"),
                py::arg("plan"), py::call_guard<py::gil_scoped_release>());
    sim_mod.def("simulate_detection_latency", &sim::simulate_detection_latency,
                py::arg("params"), py::arg("strategy"), py::arg("plan"),
                py::call_guard<py::gil_scoped_release>());
    sim_mod.def("simulate_energy", &sim::simulate_energy, py::arg("params"),
                py::arg("strategy"), py::arg("plan"),
                py::call_guard<py::gil_scoped_release>());
}
