#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "llm_energy/distributions.h"
#include "llm_energy/energy_model.h"
#include "llm_energy/rng.h"
#include "llm_energy/tps_model.h"

namespace llm_energy {

enum class OutputLengthDistribution {
  kExponential,  // median = l_out_median
  kFixed,        // every query has exactly l_out_median tokens
};

struct WorkloadSpec {
  std::string regime_name = "traditional";
  double l_in = 500.0;
  double l_out_median = 300.0;
  EffectiveLengthMode l_eff_mode = EffectiveLengthMode::kOutputOnly;
  OutputLengthDistribution l_out_distribution =
      OutputLengthDistribution::kExponential;

  static WorkloadSpec traditional();
  static WorkloadSpec test_time();
  void validate() const;
  bool operator==(const WorkloadSpec&) const = default;
};

enum class AlphaCategory { kModel, kServing, kHardware, kCombined };

std::string_view to_string(AlphaCategory category);
AlphaCategory parse_alpha_category(std::string_view text);

// Efficiency multiplier drawn per query from a log-normal with the given
// P5/P95. Divides energy (equivalently multiplies throughput).
struct AlphaSpec {
  AlphaCategory category = AlphaCategory::kModel;
  double p5 = 1.0;
  double p95 = 1.0;
  bool enabled = true;

  void validate() const;
  bool operator==(const AlphaSpec&) const = default;
};

// Shipped lever ranges: model [1.5, 10], serving [1.5, 5], hardware [1.5, 2.5].
std::vector<AlphaSpec> default_levers(bool enabled);
// Conservative combined improvement, alpha in [1.5, 3].
AlphaSpec improved_alpha();

enum class PowerCenterMode {
  kQuantileMatched,  // log-normal through P5/P95 exactly (median 0.6 p_max)
  kRecentered,       // median moved to 0.7 p_max, quantile-fit spread kept
};

std::string_view to_string(PowerCenterMode mode);
PowerCenterMode parse_power_center_mode(std::string_view text);

struct ScenarioMember {
  std::string model_name;
  NodeSpec node;
  TpsModel tps_model;
};

struct ScenarioSpec {
  std::vector<ScenarioMember> members;
  WorkloadSpec workload;
  double pue_p5 = 1.05;
  double pue_p95 = 1.40;
  PowerMode power_mode = PowerMode::kIndependent;
  double power_p5_frac = 0.4;
  double power_p95_frac = 0.9;
  PowerCenterMode power_center_mode = PowerCenterMode::kQuantileMatched;
  std::vector<AlphaSpec> alphas;
  int64_t n_samples = 10000;
  uint64_t seed = 0;

  void validate() const;
};

// One realized query. energy_wh == energy_per_query(pue, p_node_kw, l_eff,
// tps) / alpha.
struct QuerySample {
  std::string model_name;
  double l_out = 0.0;
  double l_eff = 0.0;
  double tps = 0.0;
  double p_node_kw = 0.0;
  double pue = 0.0;
  double alpha = 1.0;
  double energy_wh = 0.0;

  bool operator==(const QuerySample&) const = default;
};

struct DistributionSummary {
  int64_t n = 0;
  double mean_wh = 0.0;
  double p5_wh = 0.0;
  double q1_wh = 0.0;
  double median_wh = 0.0;
  double q3_wh = 0.0;
  double p95_wh = 0.0;

  bool operator==(const DistributionSummary&) const = default;
};

// Fixed draw slots within one query's stream. Every variable owns its slot,
// so toggling one lever never shifts the draws of another.
// Truncated variables are resampled from consecutive slots of their range.
namespace slots {
inline constexpr uint64_t kMember = 0;
inline constexpr uint64_t kOutputLength = 1;
inline constexpr uint64_t kAlphaBase = 16;             // + AlphaCategory
inline constexpr uint64_t kPueBase = 1ull << 32;       // + attempt, PUE >= 1
inline constexpr uint64_t kNodePowerBase = 2ull << 32;  // + attempt, <= p_max
inline constexpr uint64_t kMaxAttempts = 1u << 16;
}  // namespace slots

// Log-normal for node power in kW under the configured center mode.
LogNormalParams node_power_params(const ScenarioSpec& spec,
                                  const NodeSpec& node);

// Draws one query for members[member_index]. Only rng.seed and
// rng.stream_id are used; each variable reads its own slot.
QuerySample sample_query(const ScenarioSpec& spec, size_t member_index,
                         const RngState& rng);

struct ScenarioResult {
  std::vector<QuerySample> samples;
  DistributionSummary summary;
};

// Sample i lives on stream i of spec.seed. With several members each query
// picks one uniformly. Output is identical for any worker count.
ScenarioResult run_scenario(const ScenarioSpec& spec, unsigned workers = 1);

// Linear interpolation between closest order statistics on sorted data.
double sorted_quantile(std::span<const double> sorted, double p);

DistributionSummary summarize_values(std::vector<double> values);
DistributionSummary summarize(std::span<const QuerySample> samples);

std::vector<double> energies(std::span<const QuerySample> samples);

struct MixPart {
  std::span<const QuerySample> samples;
  double weight = 0.0;
};

// Draw j comes from part i with probability weight_i (choice keyed by
// seed and j) and takes that part's j-th sample. Output length is the
// smallest part size. Weights must be positive and sum to 1 within 1e-9.
std::vector<QuerySample> mix_regimes(std::span<const MixPart> parts,
                                     uint64_t seed);

struct LeverOutcome {
  std::string name;
  DistributionSummary summary;
  double median_reduction = 1.0;  // baseline median / lever median
};

// Baseline (no alpha) plus one run per lever with only that lever enabled,
// all at matched rng coordinates. The first entry is the baseline.
std::vector<LeverOutcome> run_lever_study(const ScenarioSpec& spec,
                                          std::span<const AlphaSpec> levers,
                                          unsigned workers = 1);

}  // namespace llm_energy
