#include "llm_energy/scenario.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

namespace llm_energy {
namespace {

constexpr double kRecenteredPowerFraction = 0.7;
constexpr uint64_t kMixSalt = 0x6D6978;  // "mix"

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// Rejection sampling of a log-normal restricted to [lo, hi].
double truncated_lognormal(const LogNormalParams& params, double lo, double hi,
                           const RngState& rng, uint64_t base_slot,
                           const char* what) {
  for (uint64_t attempt = 0; attempt < slots::kMaxAttempts; ++attempt) {
    double x = sample_lognormal(params, rng.at(base_slot + attempt));
    if (x >= lo && x <= hi) return x;
  }
  throw std::invalid_argument(std::string(what) +
                              " distribution has no usable mass");
}

}  // namespace

WorkloadSpec WorkloadSpec::traditional() { return {}; }

WorkloadSpec WorkloadSpec::test_time() {
  WorkloadSpec w;
  w.regime_name = "test_time";
  w.l_out_median = 5000.0;
  return w;
}

void WorkloadSpec::validate() const {
  require(l_out_median > 0.0, "workload l_out_median must be > 0");
  require(l_in >= 0.0, "workload l_in must be >= 0");
}

std::string_view to_string(AlphaCategory category) {
  switch (category) {
    case AlphaCategory::kModel:
      return "model";
    case AlphaCategory::kServing:
      return "serving";
    case AlphaCategory::kHardware:
      return "hardware";
    case AlphaCategory::kCombined:
      return "combined";
  }
  return "unknown";
}

AlphaCategory parse_alpha_category(std::string_view text) {
  if (text == "model") return AlphaCategory::kModel;
  if (text == "serving") return AlphaCategory::kServing;
  if (text == "hardware") return AlphaCategory::kHardware;
  if (text == "combined") return AlphaCategory::kCombined;
  throw std::invalid_argument("unknown alpha category '" + std::string(text) +
                              "'");
}

void AlphaSpec::validate() const {
  require(p5 > 0.0, "alpha p5 must be > 0");
  require(p95 >= p5, "alpha p95 must be >= p5");
}

std::vector<AlphaSpec> default_levers(bool enabled) {
  return {{AlphaCategory::kModel, 1.5, 10.0, enabled},
          {AlphaCategory::kServing, 1.5, 5.0, enabled},
          {AlphaCategory::kHardware, 1.5, 2.5, enabled}};
}

AlphaSpec improved_alpha() { return {AlphaCategory::kCombined, 1.5, 3.0, true}; }

std::string_view to_string(PowerCenterMode mode) {
  return mode == PowerCenterMode::kQuantileMatched ? "quantile_matched"
                                                   : "recentered_0.7";
}

PowerCenterMode parse_power_center_mode(std::string_view text) {
  if (text == "quantile_matched") return PowerCenterMode::kQuantileMatched;
  if (text == "recentered_0.7") return PowerCenterMode::kRecentered;
  throw std::invalid_argument("unknown power center mode '" +
                              std::string(text) + "'");
}

void ScenarioSpec::validate() const {
  require(!members.empty(), "scenario needs at least one member");
  for (const auto& m : members) {
    m.node.validate();
    require(m.tps_model.tps_cap > 0.0,
            "member '" + m.model_name + "' has no fitted throughput model");
  }
  workload.validate();
  require(pue_p5 >= 1.0 && pue_p95 >= pue_p5,
          "pue quantiles must satisfy 1 <= p5 <= p95");
  require(power_p5_frac > 0.0 && power_p95_frac >= power_p5_frac &&
              power_p5_frac <= 1.0,
          "power fractions must satisfy 0 < p5 <= p95 and p5 <= 1");
  std::vector<AlphaCategory> seen;
  for (const auto& a : alphas) {
    a.validate();
    if (!a.enabled) continue;
    require(std::find(seen.begin(), seen.end(), a.category) == seen.end(),
            "alpha category '" + std::string(to_string(a.category)) +
                "' enabled twice");
    seen.push_back(a.category);
  }
  require(n_samples >= 1, "n_samples must be >= 1");
}

LogNormalParams node_power_params(const ScenarioSpec& spec,
                                  const NodeSpec& node) {
  LogNormalParams params = lognormal_from_quantiles(
      spec.power_p5_frac * node.p_max_kw, spec.power_p95_frac * node.p_max_kw);
  if (spec.power_center_mode == PowerCenterMode::kRecentered) {
    params.mu = std::log(kRecenteredPowerFraction * node.p_max_kw);
  }
  return params;
}

QuerySample sample_query(const ScenarioSpec& spec, size_t member_index,
                         const RngState& rng) {
  if (member_index >= spec.members.size()) {
    throw std::out_of_range("member_index out of range");
  }
  const ScenarioMember& member = spec.members[member_index];
  const WorkloadSpec& w = spec.workload;

  QuerySample q;
  q.model_name = member.model_name;

  double l_out = w.l_out_median;
  if (w.l_out_distribution == OutputLengthDistribution::kExponential) {
    l_out = sample_exponential(exponential_from_median(w.l_out_median),
                               rng.at(slots::kOutputLength));
  }
  q.l_out = std::max(1.0, std::ceil(l_out));
  q.l_eff = effective_length(w.l_in, q.l_out, w.l_eff_mode);

  q.pue = truncated_lognormal(
      lognormal_from_quantiles(spec.pue_p5, spec.pue_p95), 1.0,
      std::numeric_limits<double>::infinity(), rng, slots::kPueBase, "pue");
  q.tps = predict_tps(member.tps_model, std::max(1.0, w.l_in), q.l_out);

  if (spec.power_mode == PowerMode::kCoupled) {
    q.p_node_kw =
        coupled_node_power(q.tps, member.tps_model.tps_cap, member.node);
  } else {
    q.p_node_kw = truncated_lognormal(node_power_params(spec, member.node),
                                      0.0, member.node.p_max_kw, rng,
                                      slots::kNodePowerBase, "node power");
  }

  q.alpha = 1.0;
  for (const auto& a : spec.alphas) {
    if (!a.enabled) continue;
    auto slot = slots::kAlphaBase + static_cast<uint64_t>(a.category);
    q.alpha *= sample_lognormal(lognormal_from_quantiles(a.p5, a.p95),
                                rng.at(slot));
  }

  q.energy_wh =
      apply_alpha(energy_per_query(q.pue, q.p_node_kw, q.l_eff, q.tps), q.alpha);
  return q;
}

ScenarioResult run_scenario(const ScenarioSpec& spec, unsigned workers) {
  spec.validate();
  const auto n = static_cast<size_t>(spec.n_samples);
  const size_t n_members = spec.members.size();
  ScenarioResult result;
  result.samples.resize(n);

  auto work = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      RngState rng{spec.seed, static_cast<uint64_t>(i), 0};
      size_t member = 0;
      if (n_members > 1) {
        member = static_cast<size_t>(uniform01(rng.at(slots::kMember)) *
                                     static_cast<double>(n_members));
        member = std::min(member, n_members - 1);
      }
      result.samples[i] = sample_query(spec, member, rng);
    }
  };

  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  if (workers == 1) {
    work(0, n);
  } else {
    const size_t chunk = (n + workers - 1) / workers;
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        size_t begin = w * chunk;
        size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, w, begin, end] {
          try {
            work(begin, end);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  result.summary = summarize(result.samples);
  return result;
}

double sorted_quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty data");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<size_t>(std::floor(h));
  const size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0) return sorted[lo];
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

DistributionSummary summarize_values(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("cannot summarize no samples");
  DistributionSummary s;
  s.n = static_cast<int64_t>(values.size());
  s.mean_wh = std::accumulate(values.begin(), values.end(), 0.0) /
              static_cast<double>(values.size());
  std::sort(values.begin(), values.end());
  s.p5_wh = sorted_quantile(values, 0.05);
  s.q1_wh = sorted_quantile(values, 0.25);
  s.median_wh = sorted_quantile(values, 0.50);
  s.q3_wh = sorted_quantile(values, 0.75);
  s.p95_wh = sorted_quantile(values, 0.95);
  return s;
}

DistributionSummary summarize(std::span<const QuerySample> samples) {
  return summarize_values(energies(samples));
}

std::vector<double> energies(std::span<const QuerySample> samples) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& q : samples) out.push_back(q.energy_wh);
  return out;
}

std::vector<QuerySample> mix_regimes(std::span<const MixPart> parts,
                                     uint64_t seed) {
  require(!parts.empty(), "mix needs at least one part");
  double total = 0.0;
  size_t n = parts.front().samples.size();
  for (const auto& p : parts) {
    require(p.weight > 0.0, "mix weights must be > 0");
    require(!p.samples.empty(), "mix parts must be non-empty");
    total += p.weight;
    n = std::min(n, p.samples.size());
  }
  require(std::abs(total - 1.0) <= 1e-9, "mix weights must sum to 1");

  const uint64_t mix_seed = derive_seed(seed, kMixSalt);
  std::vector<QuerySample> mixed;
  mixed.reserve(n);
  for (size_t j = 0; j < n; ++j) {
    size_t chosen = parts.size() - 1;
    if (parts.size() > 1) {
      const double u = uniform01({mix_seed, static_cast<uint64_t>(j), 0});
      double cumulative = 0.0;
      for (size_t i = 0; i < parts.size(); ++i) {
        cumulative += parts[i].weight;
        if (u < cumulative) {
          chosen = i;
          break;
        }
      }
    }
    mixed.push_back(parts[chosen].samples[j]);
  }
  return mixed;
}

std::vector<LeverOutcome> run_lever_study(const ScenarioSpec& spec,
                                          std::span<const AlphaSpec> levers,
                                          unsigned workers) {
  ScenarioSpec base = spec;
  base.alphas.clear();
  std::vector<LeverOutcome> out;
  out.push_back({"baseline", run_scenario(base, workers).summary, 1.0});
  const double base_median = out.front().summary.median_wh;
  for (const auto& lever : levers) {
    ScenarioSpec with = base;
    AlphaSpec a = lever;
    a.enabled = true;
    with.alphas = {a};
    auto summary = run_scenario(with, workers).summary;
    out.push_back({std::string(to_string(lever.category)), summary,
                   base_median / summary.median_wh});
  }
  return out;
}

}  // namespace llm_energy
