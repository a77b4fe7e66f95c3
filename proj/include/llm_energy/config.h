#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "llm_energy/benchmark_data.h"
#include "llm_energy/fleet.h"
#include "llm_energy/scenario.h"
#include "llm_energy/tps_model.h"

namespace llm_energy {

// Invalid run configuration. what() lists every offending field, one per line.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct MemberConfig {
  std::string model;
  NodeSpec node;
  bool operator==(const MemberConfig&) const = default;
};

// ScenarioSpec minus the fitted throughput models, which are resolved from
// the benchmark file at run time.
struct ScenarioConfig {
  std::string name = "scenario";
  std::vector<MemberConfig> members;
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
  bool operator==(const ScenarioConfig&) const = default;
};

struct MixComponent {
  WorkloadSpec workload;
  double weight = 0.0;
  bool operator==(const MixComponent&) const = default;
};

struct FleetConfig {
  FleetSpec spec;
  std::vector<MixComponent> mix;
  std::optional<AlphaSpec> improved_alpha;
  bool operator==(const FleetConfig&) const = default;
};

enum class OutputFormat { kText, kCsv };

std::string_view to_string(OutputFormat format);
OutputFormat parse_output_format(std::string_view text);

struct OutputConfig {
  OutputFormat format = OutputFormat::kText;
  std::string destination;  // empty: stdout
  int histogram_bins = 50;
  bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
  std::filesystem::path benchmark_path;
  UnderdeterminedPolicy fit_policy = UnderdeterminedPolicy::kPooledAnchor;
  ScenarioConfig scenario;
  bool per_member = true;
  std::vector<AlphaSpec> levers;
  std::optional<FleetConfig> fleet;
  unsigned workers = 1;
  OutputConfig output;
  bool operator==(const RunConfig&) const = default;
};

// Parses a JSON config document. Relative paths resolve against base_dir.
// Unknown keys, wrong types, out-of-range values and missing files are all
// collected into one ConfigError.
RunConfig parse_run_config(std::string_view json_text,
                           const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

// Fully explicit JSON rendering; parse_run_config(echo) == config.
std::string echo_run_config(const RunConfig& config);

std::string_view to_string(UnderdeterminedPolicy policy);

// Pairs each configured member with its fitted model. Throws ConfigError
// naming members whose model is absent from `models`.
ScenarioSpec build_scenario(const ScenarioConfig& config,
                            const std::vector<TpsModel>& models);

}  // namespace llm_energy
