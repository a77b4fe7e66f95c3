#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "llm_energy/config.h"
#include "llm_energy/fleet.h"
#include "llm_energy/histogram.h"
#include "llm_energy/scenario.h"
#include "llm_energy/tps_model.h"

namespace llm_energy {

inline constexpr std::string_view kSampleCsvHeader =
    "model,l_out,l_eff,tps,p_node_kw,pue,alpha,energy_wh";

// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

double round_significant(double value, int digits);

// Fitted models: coefficients rounded to 6 significant figures.
std::string fit_document(const std::vector<TpsModel>& models);
std::string fit_csv(const std::vector<TpsModel>& models);

std::string samples_csv(std::span<const QuerySample> samples);
std::vector<QuerySample> parse_samples_csv(std::string_view text);

std::string histogram_csv(const Histogram& histogram);

struct NamedSummary {
  std::string name;
  DistributionSummary summary;
};

struct SimulationOutput {
  std::string scenario_name;
  std::string regime_name;
  ScenarioResult pooled;
  std::vector<NamedSummary> per_member;  // each member simulated alone
  std::vector<LeverOutcome> levers;      // empty unless levers configured
  Histogram histogram;
};

// Runs the configured scenario, per-member runs and the lever study.
SimulationOutput run_simulation(const RunConfig& config,
                                const std::vector<TpsModel>& models);

std::string simulate_document(const SimulationOutput& output);
std::string simulate_csv(const SimulationOutput& output);

// baseline, then (when configured) improved, mixed, mixed_improved.
std::vector<FleetReportLine> run_fleet(const RunConfig& config,
                                       const std::vector<TpsModel>& models);

std::string fleet_document(std::span<const FleetReportLine> lines);
std::string fleet_csv(std::span<const FleetReportLine> lines);

// Everything: echoed config, fitted models, simulation and fleet results.
std::string report_document(const RunConfig& config,
                            const std::vector<TpsModel>& models);

}  // namespace llm_energy
