#include "llm_energy/config.h"

#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"

namespace llm_energy {

using Json = nlohmann::ordered_json;

namespace {

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out = "invalid configuration:";
  for (const auto& l : lines) {
    out += "\n  ";
    out += l;
  }
  return out;
}

// Walks a JSON document, recording every problem instead of stopping at the
// first one.
class Reader {
 public:
  std::vector<std::string> problems;

  void error(const std::string& path, const std::string& what) {
    problems.push_back(path + ": " + what);
  }

  bool object(const Json& j, const std::string& path,
              std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) {
      error(path, "expected an object");
      return false;
    }
    for (const auto& [key, value] : j.items()) {
      bool known = false;
      for (auto a : allowed) known = known || key == a;
      if (!known) error(path + "." + key, "unknown key");
    }
    return true;
  }

  void number(const Json& j, const char* key, const std::string& path,
              double& out, const std::function<bool(double)>& ok = {},
              const char* requirement = nullptr) {
    if (!j.contains(key)) return;
    const Json& v = j.at(key);
    std::string p = path + "." + key;
    if (!v.is_number()) {
      error(p, "expected a number");
      return;
    }
    double x = v.get<double>();
    if (ok && !ok(x)) {
      error(p, std::string("must be ") + requirement);
      return;
    }
    out = x;
  }

  template <typename Int>
  void integer(const Json& j, const char* key, const std::string& path,
               Int& out, long double min_value) {
    if (!j.contains(key)) return;
    const Json& v = j.at(key);
    std::string p = path + "." + key;
    if (!v.is_number_integer()) {
      error(p, "expected an integer");
      return;
    }
    if (v.is_number_unsigned()) {
      out = static_cast<Int>(v.get<uint64_t>());
    } else {
      auto x = v.get<int64_t>();
      if (static_cast<long double>(x) < min_value) {
        error(p, "must be >= " + std::to_string(static_cast<int64_t>(min_value)));
        return;
      }
      out = static_cast<Int>(x);
    }
    if (static_cast<long double>(out) < min_value) {
      error(p, "must be >= " + std::to_string(static_cast<int64_t>(min_value)));
    }
  }

  void boolean(const Json& j, const char* key, const std::string& path,
               bool& out) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_boolean()) {
      error(path + "." + key, "expected true or false");
      return;
    }
    out = j.at(key).get<bool>();
  }

  void string(const Json& j, const char* key, const std::string& path,
              std::string& out) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_string()) {
      error(path + "." + key, "expected a string");
      return;
    }
    out = j.at(key).get<std::string>();
  }

  template <typename Enum>
  void choice(const Json& j, const char* key, const std::string& path,
              Enum& out, Enum (*parse)(std::string_view)) {
    std::string text;
    if (!j.contains(key)) return;
    string(j, key, path, text);
    if (!j.at(key).is_string()) return;
    try {
      out = parse(text);
    } catch (const std::invalid_argument& e) {
      error(path + "." + key, e.what());
    }
  }
};

bool positive(double x) { return x > 0.0; }

OutputLengthDistribution parse_length_distribution(std::string_view text) {
  if (text == "exponential") return OutputLengthDistribution::kExponential;
  if (text == "fixed") return OutputLengthDistribution::kFixed;
  throw std::invalid_argument("unknown l_out_distribution '" +
                              std::string(text) + "'");
}

std::string_view to_string(OutputLengthDistribution d) {
  return d == OutputLengthDistribution::kExponential ? "exponential" : "fixed";
}

UnderdeterminedPolicy parse_policy(std::string_view text) {
  if (text == "pooled_anchor") return UnderdeterminedPolicy::kPooledAnchor;
  if (text == "minimum_norm") return UnderdeterminedPolicy::kMinimumNorm;
  throw std::invalid_argument("unknown underdetermined policy '" +
                              std::string(text) + "'");
}

WorkloadSpec read_workload(Reader& r, const Json& j, const std::string& path) {
  WorkloadSpec w;
  if (!r.object(j, path,
                {"regime_name", "l_in", "l_out_median", "l_eff_mode",
                 "l_out_distribution"})) {
    return w;
  }
  r.string(j, "regime_name", path, w.regime_name);
  r.number(j, "l_in", path, w.l_in, [](double x) { return x >= 0.0; }, ">= 0");
  r.number(j, "l_out_median", path, w.l_out_median, positive, "> 0");
  r.choice(j, "l_eff_mode", path, w.l_eff_mode, parse_effective_length_mode);
  r.choice(j, "l_out_distribution", path, w.l_out_distribution,
           parse_length_distribution);
  return w;
}

AlphaSpec read_alpha(Reader& r, const Json& j, const std::string& path) {
  AlphaSpec a;
  if (!r.object(j, path, {"category", "p5", "p95", "enabled"})) return a;
  if (!j.contains("category")) r.error(path + ".category", "required");
  if (!j.contains("p5")) r.error(path + ".p5", "required");
  if (!j.contains("p95")) r.error(path + ".p95", "required");
  r.choice(j, "category", path, a.category, parse_alpha_category);
  r.number(j, "p5", path, a.p5, positive, "> 0");
  r.number(j, "p95", path, a.p95, positive, "> 0");
  r.boolean(j, "enabled", path, a.enabled);
  if (a.p95 < a.p5) r.error(path + ".p95", "must be >= p5");
  return a;
}

std::vector<AlphaSpec> read_alphas(Reader& r, const Json& j,
                                   const std::string& path) {
  std::vector<AlphaSpec> out;
  if (!j.is_array()) {
    r.error(path, "expected an array");
    return out;
  }
  for (size_t i = 0; i < j.size(); ++i) {
    out.push_back(read_alpha(r, j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

MemberConfig read_member(Reader& r, const Json& j, const std::string& path) {
  MemberConfig m;
  if (!r.object(j, path, {"model", "gpu_count", "p_max_kw", "p_idle_kw"})) {
    return m;
  }
  if (!j.contains("model")) r.error(path + ".model", "required");
  r.string(j, "model", path, m.model);
  if (j.contains("model") && m.model.empty()) r.error(path + ".model", "empty");
  int32_t gpus = kReferenceNodeGpus;
  r.integer(j, "gpu_count", path, gpus, 1);
  if (gpus >= 1) m.node = scaled_node(gpus);
  r.number(j, "p_max_kw", path, m.node.p_max_kw, positive, "> 0");
  r.number(j, "p_idle_kw", path, m.node.p_idle_kw,
           [](double x) { return x >= 0.0; }, ">= 0");
  if (m.node.p_idle_kw >= m.node.p_max_kw) {
    r.error(path + ".p_idle_kw", "must be < p_max_kw");
  }
  return m;
}

ScenarioConfig read_scenario(Reader& r, const Json& j, const std::string& path) {
  ScenarioConfig s;
  if (!r.object(j, path,
                {"name", "members", "workload", "pue_p5", "pue_p95",
                 "power_mode", "power_p5_frac", "power_p95_frac",
                 "power_center_mode", "alphas", "n_samples", "seed"})) {
    return s;
  }
  r.string(j, "name", path, s.name);
  if (!j.contains("members")) {
    r.error(path + ".members", "required");
  } else if (!j.at("members").is_array() || j.at("members").empty()) {
    r.error(path + ".members", "expected a non-empty array");
  } else {
    const Json& members = j.at("members");
    for (size_t i = 0; i < members.size(); ++i) {
      s.members.push_back(read_member(
          r, members[i], path + ".members[" + std::to_string(i) + "]"));
    }
  }
  if (j.contains("workload")) {
    s.workload = read_workload(r, j.at("workload"), path + ".workload");
  }
  r.number(j, "pue_p5", path, s.pue_p5, [](double x) { return x >= 1.0; },
           ">= 1");
  r.number(j, "pue_p95", path, s.pue_p95, [](double x) { return x >= 1.0; },
           ">= 1");
  if (s.pue_p95 < s.pue_p5) r.error(path + ".pue_p95", "must be >= pue_p5");
  r.choice(j, "power_mode", path, s.power_mode, parse_power_mode);
  auto fraction = [](double x) { return x > 0.0 && x <= 1.0; };
  r.number(j, "power_p5_frac", path, s.power_p5_frac, fraction, "in (0, 1]");
  r.number(j, "power_p95_frac", path, s.power_p95_frac, fraction, "in (0, 1]");
  if (s.power_p95_frac < s.power_p5_frac) {
    r.error(path + ".power_p95_frac", "must be >= power_p5_frac");
  }
  r.choice(j, "power_center_mode", path, s.power_center_mode,
           parse_power_center_mode);
  if (j.contains("alphas")) {
    s.alphas = read_alphas(r, j.at("alphas"), path + ".alphas");
    std::set<AlphaCategory> enabled;
    for (const auto& a : s.alphas) {
      if (a.enabled && !enabled.insert(a.category).second) {
        r.error(path + ".alphas",
                "category '" + std::string(to_string(a.category)) +
                    "' enabled more than once");
      }
    }
  }
  r.integer(j, "n_samples", path, s.n_samples, 1);
  r.integer(j, "seed", path, s.seed, 0);
  return s;
}

BetaComponents read_beta_components(Reader& r, const Json& j,
                                    const std::string& path) {
  BetaComponents c;
  if (!r.object(j, path,
                {"mean_utilization", "p_max_kw", "p_idle_kw",
                 "redundancy_factor", "interconnect_factor"})) {
    return c;
  }
  r.number(j, "mean_utilization", path, c.mean_utilization,
           [](double x) { return x > 0.0 && x <= 1.0; }, "in (0, 1]");
  r.number(j, "p_max_kw", path, c.p_max_kw, positive, "> 0");
  r.number(j, "p_idle_kw", path, c.p_idle_kw,
           [](double x) { return x >= 0.0; }, ">= 0");
  r.number(j, "redundancy_factor", path, c.redundancy_factor,
           [](double x) { return x >= 1.0; }, ">= 1");
  r.number(j, "interconnect_factor", path, c.interconnect_factor,
           [](double x) { return x >= 1.0; }, ">= 1");
  if (c.p_idle_kw > c.p_max_kw) r.error(path + ".p_idle_kw", "must be <= p_max_kw");
  return c;
}

FleetConfig read_fleet(Reader& r, const Json& j, const std::string& path) {
  FleetConfig f;
  if (!r.object(j, path,
                {"queries_per_day", "beta", "beta_components", "mix",
                 "improved_alpha"})) {
    return f;
  }
  r.number(j, "queries_per_day", path, f.spec.queries_per_day,
           [](double x) { return x >= 1.0; }, ">= 1");
  if (j.contains("beta") && !j.at("beta").is_null()) {
    double beta = 1.0;
    r.number(j, "beta", path, beta, [](double x) { return x >= 1.0; }, ">= 1");
    f.spec.beta = beta;
  }
  if (j.contains("beta_components")) {
    f.spec.beta_components =
        read_beta_components(r, j.at("beta_components"), path + ".beta_components");
  }
  if (j.contains("mix")) {
    const Json& mix = j.at("mix");
    if (!mix.is_array()) {
      r.error(path + ".mix", "expected an array");
    } else {
      double total = 0.0;
      for (size_t i = 0; i < mix.size(); ++i) {
        std::string p = path + ".mix[" + std::to_string(i) + "]";
        MixComponent c;
        if (r.object(mix[i], p, {"workload", "weight"})) {
          if (!mix[i].contains("weight")) r.error(p + ".weight", "required");
          r.number(mix[i], "weight", p, c.weight, positive, "> 0");
          if (mix[i].contains("workload")) {
            c.workload = read_workload(r, mix[i].at("workload"), p + ".workload");
          } else {
            r.error(p + ".workload", "required");
          }
        }
        total += c.weight;
        f.mix.push_back(c);
      }
      if (!f.mix.empty() && std::abs(total - 1.0) > 1e-9) {
        r.error(path + ".mix", "weights must sum to 1");
      }
    }
  }
  if (j.contains("improved_alpha") && !j.at("improved_alpha").is_null()) {
    const Json& a = j.at("improved_alpha");
    Json with_category = a;
    if (a.is_object() && !a.contains("category")) {
      with_category["category"] = "combined";
    }
    f.improved_alpha = read_alpha(r, with_category, path + ".improved_alpha");
  }
  return f;
}

OutputConfig read_output(Reader& r, const Json& j, const std::string& path) {
  OutputConfig o;
  if (!r.object(j, path, {"format", "destination", "histogram_bins"})) return o;
  r.choice(j, "format", path, o.format, parse_output_format);
  r.string(j, "destination", path, o.destination);
  r.integer(j, "histogram_bins", path, o.histogram_bins, 1);
  return o;
}

Json workload_json(const WorkloadSpec& w) {
  return Json{{"regime_name", w.regime_name},
              {"l_in", w.l_in},
              {"l_out_median", w.l_out_median},
              {"l_eff_mode", to_string(w.l_eff_mode)},
              {"l_out_distribution", to_string(w.l_out_distribution)}};
}

Json alpha_json(const AlphaSpec& a) {
  return Json{{"category", to_string(a.category)},
              {"p5", a.p5},
              {"p95", a.p95},
              {"enabled", a.enabled}};
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join_lines(problems)), problems_(std::move(problems)) {}

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::kText ? "text" : "csv";
}

OutputFormat parse_output_format(std::string_view text) {
  if (text == "text") return OutputFormat::kText;
  if (text == "csv") return OutputFormat::kCsv;
  throw std::invalid_argument("unknown output format '" + std::string(text) +
                              "' (expected text or csv)");
}

std::string_view to_string(UnderdeterminedPolicy policy) {
  return policy == UnderdeterminedPolicy::kPooledAnchor ? "pooled_anchor"
                                                        : "minimum_norm";
}

RunConfig parse_run_config(std::string_view json_text,
                           const std::filesystem::path& base_dir) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw ConfigError({std::string("config is not valid JSON: ") + e.what()});
  }

  Reader r;
  RunConfig c;
  const std::string root = "$";
  if (!r.object(j, root,
                {"benchmark_path", "fit", "scenario", "per_member", "levers",
                 "fleet", "workers", "output"})) {
    throw ConfigError(r.problems);
  }

  if (!j.contains("benchmark_path")) {
    r.error("$.benchmark_path", "required");
  } else {
    std::string text;
    r.string(j, "benchmark_path", root, text);
    if (!text.empty()) {
      std::filesystem::path p(text);
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      c.benchmark_path = p.lexically_normal();
      if (!std::filesystem::exists(c.benchmark_path)) {
        r.error("$.benchmark_path", "file not found: " + c.benchmark_path.string());
      }
    }
  }
  if (j.contains("fit")) {
    const Json& fit = j.at("fit");
    if (r.object(fit, "$.fit", {"underdetermined"})) {
      r.choice(fit, "underdetermined", "$.fit", c.fit_policy, parse_policy);
    }
  }
  if (!j.contains("scenario")) {
    r.error("$.scenario", "required");
  } else {
    c.scenario = read_scenario(r, j.at("scenario"), "$.scenario");
  }
  r.boolean(j, "per_member", root, c.per_member);
  if (j.contains("levers")) c.levers = read_alphas(r, j.at("levers"), "$.levers");
  if (j.contains("fleet") && !j.at("fleet").is_null()) {
    c.fleet = read_fleet(r, j.at("fleet"), "$.fleet");
  }
  r.integer(j, "workers", root, c.workers, 1);
  if (j.contains("output")) c.output = read_output(r, j.at("output"), "$.output");

  if (!r.problems.empty()) throw ConfigError(r.problems);
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({"cannot read config file: " + path.string()});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str(), std::filesystem::absolute(path).parent_path());
}

std::string echo_run_config(const RunConfig& c) {
  Json members = Json::array();
  for (const auto& m : c.scenario.members) {
    members.push_back(Json{{"model", m.model},
                           {"gpu_count", m.node.gpu_count},
                           {"p_max_kw", m.node.p_max_kw},
                           {"p_idle_kw", m.node.p_idle_kw}});
  }
  Json alphas = Json::array();
  for (const auto& a : c.scenario.alphas) alphas.push_back(alpha_json(a));
  Json levers = Json::array();
  for (const auto& a : c.levers) levers.push_back(alpha_json(a));

  Json j;
  j["benchmark_path"] = c.benchmark_path.string();
  j["fit"] = Json{{"underdetermined", to_string(c.fit_policy)}};
  j["scenario"] = Json{{"name", c.scenario.name},
                       {"members", members},
                       {"workload", workload_json(c.scenario.workload)},
                       {"pue_p5", c.scenario.pue_p5},
                       {"pue_p95", c.scenario.pue_p95},
                       {"power_mode", to_string(c.scenario.power_mode)},
                       {"power_p5_frac", c.scenario.power_p5_frac},
                       {"power_p95_frac", c.scenario.power_p95_frac},
                       {"power_center_mode",
                        to_string(c.scenario.power_center_mode)},
                       {"alphas", alphas},
                       {"n_samples", c.scenario.n_samples},
                       {"seed", c.scenario.seed}};
  j["per_member"] = c.per_member;
  j["levers"] = levers;
  if (c.fleet) {
    const auto& f = *c.fleet;
    const auto& bc = f.spec.beta_components;
    Json mix = Json::array();
    for (const auto& m : f.mix) {
      mix.push_back(Json{{"workload", workload_json(m.workload)},
                         {"weight", m.weight}});
    }
    j["fleet"] = Json{
        {"queries_per_day", f.spec.queries_per_day},
        {"beta", f.spec.beta ? Json(*f.spec.beta) : Json(nullptr)},
        {"beta_components",
         Json{{"mean_utilization", bc.mean_utilization},
              {"p_max_kw", bc.p_max_kw},
              {"p_idle_kw", bc.p_idle_kw},
              {"redundancy_factor", bc.redundancy_factor},
              {"interconnect_factor", bc.interconnect_factor}}},
        {"mix", mix},
        {"improved_alpha",
         f.improved_alpha ? alpha_json(*f.improved_alpha) : Json(nullptr)}};
  } else {
    j["fleet"] = nullptr;
  }
  j["workers"] = c.workers;
  j["output"] = Json{{"format", to_string(c.output.format)},
                     {"destination", c.output.destination},
                     {"histogram_bins", c.output.histogram_bins}};
  return j.dump(2) + "\n";
}

ScenarioSpec build_scenario(const ScenarioConfig& config,
                            const std::vector<TpsModel>& models) {
  ScenarioSpec spec;
  std::vector<std::string> problems;
  for (size_t i = 0; i < config.members.size(); ++i) {
    const auto& m = config.members[i];
    const TpsModel* fitted = find_model(models, m.model);
    if (!fitted) {
      problems.push_back("$.scenario.members[" + std::to_string(i) +
                         "].model: no benchmark data for '" + m.model + "'");
      continue;
    }
    spec.members.push_back({m.model, m.node, *fitted});
  }
  if (!problems.empty()) throw ConfigError(problems);
  spec.workload = config.workload;
  spec.pue_p5 = config.pue_p5;
  spec.pue_p95 = config.pue_p95;
  spec.power_mode = config.power_mode;
  spec.power_p5_frac = config.power_p5_frac;
  spec.power_p95_frac = config.power_p95_frac;
  spec.power_center_mode = config.power_center_mode;
  spec.alphas = config.alphas;
  spec.n_samples = config.n_samples;
  spec.seed = config.seed;
  return spec;
}

}  // namespace llm_energy
