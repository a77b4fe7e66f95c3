#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "llm_energy/benchmark_data.h"
#include "llm_energy/config.h"
#include "llm_energy/distributions.h"
#include "llm_energy/energy_model.h"
#include "llm_energy/fleet.h"
#include "llm_energy/report.h"
#include "llm_energy/scenario.h"
#include "llm_energy/tps_model.h"

namespace py = pybind11;
using namespace llm_energy;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Monte Carlo estimator of LLM inference energy per query";

  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<BenchmarkRecord>(m, "BenchmarkRecord")
      .def(py::init<>())
      .def_readwrite("model_name", &BenchmarkRecord::model_name)
      .def_readwrite("tp_size", &BenchmarkRecord::tp_size)
      .def_readwrite("quantization", &BenchmarkRecord::quantization)
      .def_readwrite("tps", &BenchmarkRecord::tps)
      .def_readwrite("l_in", &BenchmarkRecord::l_in)
      .def_readwrite("l_out", &BenchmarkRecord::l_out)
      .def_readwrite("source", &BenchmarkRecord::source)
      .def(py::self == py::self);

  m.def("parse_benchmarks", [](const std::string& text) { return parse_benchmarks(text); });
  m.def("serialize_benchmarks", &serialize_benchmarks);
  m.def("load_benchmarks", &load_benchmarks);
  m.def("records_for_model", [](const std::vector<BenchmarkRecord>& r, const std::string& name) {
    return records_for_model(r, name);
  });

  py::enum_<FitMethod>(m, "FitMethod")
      .value("OLS", FitMethod::kOrdinaryLeastSquares)
      .value("MINIMUM_NORM", FitMethod::kMinimumNorm)
      .value("POOLED_ANCHOR", FitMethod::kPooledAnchor);
  py::enum_<UnderdeterminedPolicy>(m, "UnderdeterminedPolicy")
      .value("MINIMUM_NORM", UnderdeterminedPolicy::kMinimumNorm)
      .value("POOLED_ANCHOR", UnderdeterminedPolicy::kPooledAnchor);

  py::class_<TpsModel>(m, "TpsModel")
      .def_readonly("model_name", &TpsModel::model_name)
      .def_readonly("beta0", &TpsModel::beta0)
      .def_readonly("beta1", &TpsModel::beta1)
      .def_readonly("beta2", &TpsModel::beta2)
      .def_readonly("tps_cap", &TpsModel::tps_cap)
      .def_readonly("n_obs", &TpsModel::n_obs)
      .def_readonly("method", &TpsModel::method);

  m.def("fit_log_linear", &fit_log_linear);
  m.def("fit_models", &fit_models, py::arg("records"),
        py::arg("policy") = UnderdeterminedPolicy::kPooledAnchor);
  m.def("predict_tps", &predict_tps, py::arg("model"), py::arg("l_in"), py::arg("l_out"));

  m.def("energy_per_query", &energy_per_query, py::arg("pue"), py::arg("p_node_kw"),
        py::arg("l_eff"), py::arg("tps"));
  m.def("apply_alpha", &apply_alpha);

  py::class_<LogNormalParams>(m, "LogNormalParams")
      .def_readonly("mu", &LogNormalParams::mu)
      .def_readonly("sigma", &LogNormalParams::sigma)
      .def("median", &LogNormalParams::median)
      .def("quantile", &LogNormalParams::quantile);
  py::class_<ExponentialParams>(m, "ExponentialParams")
      .def_readonly("rate", &ExponentialParams::rate)
      .def("median", &ExponentialParams::median)
      .def("quantile", &ExponentialParams::quantile);
  m.def("lognormal_from_quantiles", &lognormal_from_quantiles);
  m.def("exponential_from_median", &exponential_from_median);

  py::class_<BetaComponents>(m, "BetaComponents")
      .def(py::init<>())
      .def_readwrite("mean_utilization", &BetaComponents::mean_utilization)
      .def_readwrite("p_max_kw", &BetaComponents::p_max_kw)
      .def_readwrite("p_idle_kw", &BetaComponents::p_idle_kw)
      .def_readwrite("redundancy_factor", &BetaComponents::redundancy_factor)
      .def_readwrite("interconnect_factor", &BetaComponents::interconnect_factor);
  m.def("compute_beta", &compute_beta, py::arg("components") = BetaComponents{});
  m.def("daily_energy", &daily_energy);

  py::class_<DistributionSummary>(m, "DistributionSummary")
      .def_readonly("n", &DistributionSummary::n)
      .def_readonly("mean_wh", &DistributionSummary::mean_wh)
      .def_readonly("p5_wh", &DistributionSummary::p5_wh)
      .def_readonly("q1_wh", &DistributionSummary::q1_wh)
      .def_readonly("median_wh", &DistributionSummary::median_wh)
      .def_readonly("q3_wh", &DistributionSummary::q3_wh)
      .def_readonly("p95_wh", &DistributionSummary::p95_wh);
  m.def("summarize", &summarize_values);

  // Documents as produced by the CLI, given the path of a JSON run config.
  m.def("simulate_json", [](const std::filesystem::path& config_path) {
    const RunConfig c = load_run_config(config_path);
    return simulate_document(run_simulation(c, fit_models(load_benchmarks(c.benchmark_path),
                                                          c.fit_policy)));
  });
  m.def("fleet_json", [](const std::filesystem::path& config_path) {
    const RunConfig c = load_run_config(config_path);
    const auto lines = run_fleet(c, fit_models(load_benchmarks(c.benchmark_path), c.fit_policy));
    return fleet_document(lines);
  });
  m.def("simulate_samples_csv", [](const std::filesystem::path& config_path) {
    const RunConfig c = load_run_config(config_path);
    return samples_csv(
        run_simulation(c, fit_models(load_benchmarks(c.benchmark_path), c.fit_policy))
            .pooled.samples);
  });
}
