#include "llm_energy/energy_model.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace llm_energy {

void NodeSpec::validate() const {
  if (gpu_count < 1) throw std::invalid_argument("gpu_count must be >= 1");
  if (!(p_max_kw > 0.0)) throw std::invalid_argument("p_max_kw must be > 0");
  if (!(p_idle_kw >= 0.0) || !(p_idle_kw < p_max_kw)) {
    throw std::invalid_argument("p_idle_kw must satisfy 0 <= p_idle_kw < p_max_kw");
  }
}

NodeSpec scaled_node(int32_t gpu_count) {
  if (gpu_count < 1) throw std::invalid_argument("gpu_count must be >= 1");
  double p_max = kReferenceNodeMaxKw * gpu_count / kReferenceNodeGpus;
  return {gpu_count, std::round(p_max * 10.0) / 10.0, kReferenceNodeIdleKw};
}

std::string_view to_string(EffectiveLengthMode mode) {
  return mode == EffectiveLengthMode::kOutputOnly ? "output_only"
                                                  : "input_plus_output";
}

std::string_view to_string(PowerMode mode) {
  return mode == PowerMode::kIndependent ? "independent" : "coupled";
}

EffectiveLengthMode parse_effective_length_mode(std::string_view text) {
  if (text == "output_only") return EffectiveLengthMode::kOutputOnly;
  if (text == "input_plus_output") return EffectiveLengthMode::kInputPlusOutput;
  throw std::invalid_argument("unknown effective length mode '" +
                              std::string(text) + "'");
}

PowerMode parse_power_mode(std::string_view text) {
  if (text == "independent") return PowerMode::kIndependent;
  if (text == "coupled") return PowerMode::kCoupled;
  throw std::invalid_argument("unknown power mode '" + std::string(text) + "'");
}

double energy_per_query(double pue, double p_node_kw, double l_eff,
                        double tps) {
  if (!(tps > 0.0)) throw std::invalid_argument("tps must be > 0");
  if (!(pue >= 1.0)) throw std::invalid_argument("pue must be >= 1");
  return (pue / kKwSecondsPerWattHour) * (p_node_kw * l_eff / tps);
}

double effective_length(double l_in, double l_out, EffectiveLengthMode mode) {
  return mode == EffectiveLengthMode::kOutputOnly ? l_out : l_in + l_out;
}

double coupled_node_power(double tps, double tps_cap, const NodeSpec& node) {
  if (!(tps_cap > 0.0)) throw std::invalid_argument("tps_cap must be > 0");
  if (!(tps >= 0.0) || tps > tps_cap) {
    throw std::invalid_argument("coupled power needs 0 <= tps <= tps_cap");
  }
  const double peak = kCoupledPeakFraction * node.p_max_kw;
  if (tps == tps_cap) return peak;
  return node.p_idle_kw + (peak - node.p_idle_kw) * (tps / tps_cap);
}

double apply_alpha(double energy_wh, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  return energy_wh / alpha;
}

}  // namespace llm_energy
