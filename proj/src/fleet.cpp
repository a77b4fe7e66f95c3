#include "llm_energy/fleet.h"

#include <stdexcept>
#include <utility>

namespace llm_energy {

namespace {
constexpr double kHoursPerDay = 24.0;
}

void BetaComponents::validate() const {
  if (!(mean_utilization > 0.0) || mean_utilization > 1.0) {
    throw std::invalid_argument("mean_utilization must be in (0, 1]");
  }
  if (!(p_max_kw > 0.0)) throw std::invalid_argument("p_max_kw must be > 0");
  if (!(p_idle_kw >= 0.0) || p_idle_kw > p_max_kw) {
    throw std::invalid_argument("p_idle_kw must be in [0, p_max_kw]");
  }
  if (!(redundancy_factor >= 1.0)) {
    throw std::invalid_argument("redundancy_factor must be >= 1");
  }
  if (!(interconnect_factor >= 1.0)) {
    throw std::invalid_argument("interconnect_factor must be >= 1");
  }
}

BetaBreakdown beta_breakdown(const BetaComponents& c) {
  c.validate();
  BetaBreakdown b;
  b.e_uniform_kwh_per_day = c.p_max_kw * kHoursPerDay;
  b.e_sin_kwh_per_day = c.p_idle_kw * kHoursPerDay +
                        (c.p_max_kw - c.p_idle_kw) * kHoursPerDay *
                            c.mean_utilization;
  b.utilization_factor =
      (1.0 / c.mean_utilization) * (b.e_sin_kwh_per_day / b.e_uniform_kwh_per_day);
  b.beta = c.redundancy_factor * b.utilization_factor * c.interconnect_factor;
  return b;
}

double compute_beta(const BetaComponents& c) { return beta_breakdown(c).beta; }

double FleetSpec::resolved_beta() const {
  return beta ? *beta : compute_beta(beta_components);
}

void FleetSpec::validate() const {
  if (!(queries_per_day >= 1.0)) {
    throw std::invalid_argument("queries_per_day must be >= 1");
  }
  if (beta) {
    if (!(*beta >= 1.0)) throw std::invalid_argument("beta must be >= 1");
  } else {
    beta_components.validate();
  }
}

double daily_energy(double mean_energy_per_query_wh, double queries_per_day,
                    double beta) {
  return mean_energy_per_query_wh * queries_per_day * beta / 1e9;
}

FleetReportLine fleet_line(std::string scenario, double mean_wh_per_query,
                           const FleetSpec& fleet) {
  FleetReportLine line;
  line.scenario = std::move(scenario);
  line.mean_wh_per_query = mean_wh_per_query;
  line.queries_per_day = fleet.queries_per_day;
  line.beta = fleet.resolved_beta();
  line.gwh_per_day =
      daily_energy(mean_wh_per_query, fleet.queries_per_day, line.beta);
  return line;
}

}  // namespace llm_energy
