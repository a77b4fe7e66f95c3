#pragma once

#include <cstdint>
#include <string_view>

namespace llm_energy {

// Reference node: 8 GPUs at 11.3 kW peak, 2.7 kW idle.
inline constexpr double kReferenceNodeMaxKw = 11.3;
inline constexpr double kReferenceNodeIdleKw = 2.7;
inline constexpr int kReferenceNodeGpus = 8;

// Fraction of rated power reached when a node runs at its throughput cap.
inline constexpr double kCoupledPeakFraction = 0.9;

// kW * s -> Wh
inline constexpr double kKwSecondsPerWattHour = 3.6;

struct NodeSpec {
  int32_t gpu_count = kReferenceNodeGpus;
  double p_max_kw = kReferenceNodeMaxKw;
  double p_idle_kw = kReferenceNodeIdleKw;

  void validate() const;
  bool operator==(const NodeSpec&) const = default;
};

// Peak power scaled linearly from the reference node and rounded to 0.1 kW
// (10 GPUs -> 14.1 kW). Idle power stays at the reference value.
NodeSpec scaled_node(int32_t gpu_count);

enum class EffectiveLengthMode { kOutputOnly, kInputPlusOutput };
enum class PowerMode { kIndependent, kCoupled };

std::string_view to_string(EffectiveLengthMode mode);
std::string_view to_string(PowerMode mode);
EffectiveLengthMode parse_effective_length_mode(std::string_view text);
PowerMode parse_power_mode(std::string_view text);

// Wh = (pue / 3.6) * p_node_kw * l_eff / tps
double energy_per_query(double pue, double p_node_kw, double l_eff, double tps);

double effective_length(double l_in, double l_out, EffectiveLengthMode mode);

// Node draw rising linearly from idle (tps = 0) to 0.9 * p_max (tps = cap).
double coupled_node_power(double tps, double tps_cap, const NodeSpec& node);

double apply_alpha(double energy_wh, double alpha);

}  // namespace llm_energy
