#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace llm_energy {

// Inputs to the fleet overhead factor. The daily load profile enters only
// through its mean; the default profile is a sinusoid between 50% and 100%.
struct BetaComponents {
  double mean_utilization = 0.75;
  double p_max_kw = 11.3;
  double p_idle_kw = 2.7;
  double redundancy_factor = 1.10;
  double interconnect_factor = 1.12;

  void validate() const;
  bool operator==(const BetaComponents&) const = default;
};

struct BetaBreakdown {
  double e_uniform_kwh_per_day = 0.0;  // one node at full load
  double e_sin_kwh_per_day = 0.0;      // one node under the daily profile
  double utilization_factor = 0.0;
  double beta = 0.0;
};

BetaBreakdown beta_breakdown(const BetaComponents& c);
double compute_beta(const BetaComponents& c);

struct FleetSpec {
  double queries_per_day = 1e9;
  // Given directly, or derived from beta_components when empty.
  std::optional<double> beta;
  BetaComponents beta_components;

  double resolved_beta() const;
  void validate() const;
  bool operator==(const FleetSpec&) const = default;
};

// GWh/day = mean Wh/query * queries/day * beta / 1e9
double daily_energy(double mean_energy_per_query_wh, double queries_per_day,
                    double beta);

struct FleetReportLine {
  std::string scenario;
  double mean_wh_per_query = 0.0;
  double queries_per_day = 0.0;
  double beta = 0.0;
  double gwh_per_day = 0.0;
};

FleetReportLine fleet_line(std::string scenario, double mean_wh_per_query,
                           const FleetSpec& fleet);

}  // namespace llm_energy
