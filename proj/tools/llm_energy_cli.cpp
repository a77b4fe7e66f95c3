// llm-energy: fit throughput models, simulate per-query energy, and
// extrapolate fleet totals from a JSON run configuration.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "llm_energy/benchmark_data.h"
#include "llm_energy/config.h"
#include "llm_energy/report.h"
#include "llm_energy/tps_model.h"

namespace {

using namespace llm_energy;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

#ifndef LLM_ENERGY_DEFAULT_BENCHMARKS
#define LLM_ENERGY_DEFAULT_BENCHMARKS "data/tps_benchmarks.csv"
#endif

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path);
  out << contents;
  if (!out) throw DataError("failed writing " + path);
}

void emit(const std::string& destination, const std::string& document) {
  if (destination.empty()) {
    std::cout << document;
  } else {
    write_file(destination, document);
  }
}

OutputFormat resolve_format(const std::string& flag, const RunConfig* config) {
  if (!flag.empty()) {
    try {
      return parse_output_format(flag);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  return config ? config->output.format : OutputFormat::kText;
}

struct CommonOptions {
  std::string config_path;
  std::optional<uint64_t> seed;
  std::optional<unsigned> workers;
  std::string format;
  std::string output;
};

RunConfig load_config(const CommonOptions& opts) {
  if (opts.config_path.empty()) throw UsageError("--config is required");
  RunConfig config = load_run_config(opts.config_path);
  if (opts.seed) config.scenario.seed = *opts.seed;
  if (opts.workers) config.workers = *opts.workers;
  if (!opts.output.empty()) config.output.destination = opts.output;
  return config;
}

std::vector<TpsModel> fit_from(const RunConfig& config) {
  return fit_models(load_benchmarks(config.benchmark_path), config.fit_policy);
}

void add_common(CLI::App* cmd, CommonOptions& opts, bool config_required) {
  auto* c = cmd->add_option("--config", opts.config_path, "Run configuration (JSON)");
  if (config_required) c->required();
  cmd->add_option("--seed", opts.seed, "Override the configured seed");
  cmd->add_option("--workers", opts.workers, "Sampling threads")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", opts.format, "Output format: text or csv");
  cmd->add_option("--output", opts.output, "Write the document here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo estimator of LLM inference energy per query"};
  app.require_subcommand(1);

  CommonOptions fit_opts;
  std::string benchmarks;
  std::string model_filter;
  std::string policy_flag;
  auto* fit = app.add_subcommand("fit", "Fit per-model throughput regressions");
  add_common(fit, fit_opts, false);
  fit->add_option("--benchmarks", benchmarks, "Benchmark CSV (overrides config)");
  fit->add_option("--model", model_filter, "Only report this model");
  fit->add_option("--underdetermined", policy_flag,
                  "pooled_anchor (default) or minimum_norm");

  CommonOptions sim_opts;
  std::string samples_out;
  std::string histogram_out;
  auto* simulate = app.add_subcommand("simulate", "Sample per-query energy");
  add_common(simulate, sim_opts, true);
  simulate->add_option("--samples-out", samples_out, "Write every sample as CSV");
  simulate->add_option("--histogram-out", histogram_out,
                       "Write the log-binned energy histogram as CSV");

  CommonOptions fleet_opts;
  std::string samples_in;
  auto* fleet = app.add_subcommand("fleet", "Daily fleet energy");
  add_common(fleet, fleet_opts, true);
  fleet->add_option("--samples-in", samples_in,
                    "Use a saved sample CSV instead of simulating");

  CommonOptions report_opts;
  auto* report = app.add_subcommand("report", "Config, fits, simulation and fleet in one document");
  add_common(report, report_opts, true);

  CommonOptions config_opts;
  auto* config_cmd = app.add_subcommand("config", "Validate and echo a configuration");
  add_common(config_cmd, config_opts, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*fit) {
      std::optional<RunConfig> config;
      if (!fit_opts.config_path.empty()) config = load_config(fit_opts);
      std::filesystem::path path = LLM_ENERGY_DEFAULT_BENCHMARKS;
      if (config) path = config->benchmark_path;
      if (!benchmarks.empty()) path = benchmarks;
      UnderdeterminedPolicy policy =
          config ? config->fit_policy : UnderdeterminedPolicy::kPooledAnchor;
      if (policy_flag == "minimum_norm") {
        policy = UnderdeterminedPolicy::kMinimumNorm;
      } else if (policy_flag == "pooled_anchor") {
        policy = UnderdeterminedPolicy::kPooledAnchor;
      } else if (!policy_flag.empty()) {
        throw UsageError("unknown --underdetermined '" + policy_flag + "'");
      }
      auto models = fit_models(load_benchmarks(path), policy);
      if (!model_filter.empty()) {
        const TpsModel* m = find_model(models, model_filter);
        if (!m) throw UsageError("no benchmark data for model '" + model_filter + "'");
        models = {*m};
      }
      const auto format = resolve_format(fit_opts.format, config ? &*config : nullptr);
      std::string destination = fit_opts.output;
      if (destination.empty() && config) destination = config->output.destination;
      emit(destination, format == OutputFormat::kCsv ? fit_csv(models)
                                                     : fit_document(models));
      return 0;
    }

    if (*simulate) {
      RunConfig config = load_config(sim_opts);
      const auto format = resolve_format(sim_opts.format, &config);
      const auto output = run_simulation(config, fit_from(config));
      const std::string doc = format == OutputFormat::kCsv
                                  ? simulate_csv(output)
                                  : simulate_document(output);
      if (!samples_out.empty()) write_file(samples_out, samples_csv(output.pooled.samples));
      if (!histogram_out.empty()) write_file(histogram_out, histogram_csv(output.histogram));
      emit(config.output.destination, doc);
      return 0;
    }

    if (*fleet) {
      RunConfig config = load_config(fleet_opts);
      const auto format = resolve_format(fleet_opts.format, &config);
      std::vector<FleetReportLine> lines;
      if (!samples_in.empty()) {
        std::ifstream in(samples_in, std::ios::binary);
        if (!in) throw DataError("cannot open sample file: " + samples_in);
        std::ostringstream buf;
        buf << in.rdbuf();
        const auto samples = parse_samples_csv(buf.str());
        if (samples.empty()) throw DataError("sample file has no rows: " + samples_in);
        FleetSpec spec = config.fleet ? config.fleet->spec : FleetSpec{};
        lines.push_back(fleet_line("samples", summarize(samples).mean_wh, spec));
      } else {
        lines = run_fleet(config, fit_from(config));
      }
      emit(config.output.destination,
           format == OutputFormat::kCsv ? fleet_csv(lines) : fleet_document(lines));
      return 0;
    }

    if (*report) {
      RunConfig config = load_config(report_opts);
      if (resolve_format(report_opts.format, nullptr) != OutputFormat::kText) {
        throw UsageError("report is only available as --format text");
      }
      emit(config.output.destination, report_document(config, fit_from(config)));
      return 0;
    }

    if (*config_cmd) {
      RunConfig config = load_config(config_opts);
      std::cout << echo_run_config(config);
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
