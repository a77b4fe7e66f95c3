#include "llm_energy/report.h"

#include <charconv>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace llm_energy {

using Json = nlohmann::ordered_json;

namespace {

Json summary_json(const DistributionSummary& s) {
  return Json{{"n", s.n},
              {"mean_wh", s.mean_wh},
              {"p5_wh", s.p5_wh},
              {"q1_wh", s.q1_wh},
              {"median_wh", s.median_wh},
              {"q3_wh", s.q3_wh},
              {"p95_wh", s.p95_wh}};
}

Json fit_json(const std::vector<TpsModel>& models) {
  Json arr = Json::array();
  for (const auto& m : models) {
    arr.push_back(Json{{"model", m.model_name},
                       {"beta0", round_significant(m.beta0, 6)},
                       {"beta1", round_significant(m.beta1, 6)},
                       {"beta2", round_significant(m.beta2, 6)},
                       {"tps_cap", m.tps_cap},
                       {"n_obs", m.n_obs},
                       {"fit_method", to_string(m.method)}});
  }
  return arr;
}

Json simulation_json(const SimulationOutput& out) {
  Json members = Json::array();
  for (const auto& m : out.per_member) {
    Json entry{{"model", m.name}};
    entry["summary"] = summary_json(m.summary);
    members.push_back(entry);
  }
  Json j{{"scenario", out.scenario_name}, {"regime", out.regime_name}};
  j["pooled"] = summary_json(out.pooled.summary);
  j["members"] = members;
  if (!out.levers.empty()) {
    Json levers = Json::array();
    for (const auto& l : out.levers) {
      Json entry{{"lever", l.name}, {"median_reduction", l.median_reduction}};
      entry["summary"] = summary_json(l.summary);
      levers.push_back(entry);
    }
    j["levers"] = levers;
  }
  return j;
}

Json fleet_json(std::span<const FleetReportLine> lines) {
  Json arr = Json::array();
  for (const auto& l : lines) {
    arr.push_back(Json{{"scenario", l.scenario},
                       {"mean_wh_per_query", l.mean_wh_per_query},
                       {"queries_per_day", l.queries_per_day},
                       {"beta", l.beta},
                       {"gwh_per_day", l.gwh_per_day}});
  }
  return arr;
}

std::string summary_csv_row(const std::string& name,
                            const DistributionSummary& s) {
  std::string row = name;
  for (double v : {s.mean_wh, s.p5_wh, s.q1_wh, s.median_wh, s.q3_wh, s.p95_wh}) {
    row += ',';
    row += format_double(v);
  }
  row += ',' + std::to_string(s.n) + '\n';
  return row;
}

double parse_field(std::string_view text, size_t line_no, const char* name) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw DataError("sample CSV line " + std::to_string(line_no) + ", field '" +
                    name + "': cannot parse '" + std::string(text) + "'");
  }
  return v;
}

ScenarioSpec with_workload(ScenarioSpec spec, const WorkloadSpec& w) {
  spec.workload = w;
  return spec;
}

ScenarioSpec with_alpha(ScenarioSpec spec, const AlphaSpec& a) {
  spec.alphas = {a};
  return spec;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double round_significant(double value, int digits) {
  if (value == 0.0 || !std::isfinite(value)) return value;
  std::ostringstream s;
  s.precision(digits);
  s << value;
  return std::stod(s.str());
}

std::string fit_document(const std::vector<TpsModel>& models) {
  Json j;
  j["models"] = fit_json(models);
  return j.dump(2) + "\n";
}

std::string fit_csv(const std::vector<TpsModel>& models) {
  std::string out = "model,beta0,beta1,beta2,tps_cap,n_obs,fit_method\n";
  for (const auto& m : models) {
    out += m.model_name + ',' + format_double(round_significant(m.beta0, 6)) +
           ',' + format_double(round_significant(m.beta1, 6)) + ',' +
           format_double(round_significant(m.beta2, 6)) + ',' +
           format_double(m.tps_cap) + ',' + std::to_string(m.n_obs) + ',' +
           std::string(to_string(m.method)) + '\n';
  }
  return out;
}

std::string samples_csv(std::span<const QuerySample> samples) {
  std::string out(kSampleCsvHeader);
  out += '\n';
  for (const auto& q : samples) {
    out += q.model_name;
    for (double v : {q.l_out, q.l_eff, q.tps, q.p_node_kw, q.pue, q.alpha,
                     q.energy_wh}) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

std::vector<QuerySample> parse_samples_csv(std::string_view text) {
  std::vector<QuerySample> out;
  size_t pos = 0;
  size_t line_no = 0;
  bool header = false;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!header) {
      if (line != kSampleCsvHeader) {
        throw DataError("sample CSV line 1: expected header '" +
                        std::string(kSampleCsvHeader) + "'");
      }
      header = true;
      continue;
    }
    if (line.empty()) continue;
    // Model names must not contain commas.
    std::vector<std::string_view> fields;
    size_t start = 0;
    for (size_t c = line.find(','); c != std::string_view::npos;
         c = line.find(',', start)) {
      fields.push_back(line.substr(start, c - start));
      start = c + 1;
    }
    fields.push_back(line.substr(start));
    if (fields.size() != 8) {
      throw DataError("sample CSV line " + std::to_string(line_no) +
                      ": expected 8 fields");
    }
    QuerySample q;
    q.model_name = std::string(fields[0]);
    q.l_out = parse_field(fields[1], line_no, "l_out");
    q.l_eff = parse_field(fields[2], line_no, "l_eff");
    q.tps = parse_field(fields[3], line_no, "tps");
    q.p_node_kw = parse_field(fields[4], line_no, "p_node_kw");
    q.pue = parse_field(fields[5], line_no, "pue");
    q.alpha = parse_field(fields[6], line_no, "alpha");
    q.energy_wh = parse_field(fields[7], line_no, "energy_wh");
    out.push_back(std::move(q));
  }
  if (!header) throw DataError("sample CSV is empty");
  return out;
}

std::string histogram_csv(const Histogram& h) {
  std::string out = "bin_lo_wh,bin_hi_wh,count\n";
  for (size_t i = 0; i < h.counts.size(); ++i) {
    out += format_double(h.edges[i]) + ',' + format_double(h.edges[i + 1]) +
           ',' + std::to_string(h.counts[i]) + '\n';
  }
  return out;
}

SimulationOutput run_simulation(const RunConfig& config,
                                const std::vector<TpsModel>& models) {
  const ScenarioSpec spec = build_scenario(config.scenario, models);
  SimulationOutput out;
  out.scenario_name = config.scenario.name;
  out.regime_name = spec.workload.regime_name;
  out.pooled = run_scenario(spec, config.workers);
  if (config.per_member && spec.members.size() > 1) {
    for (const auto& member : spec.members) {
      ScenarioSpec alone = spec;
      alone.members = {member};
      out.per_member.push_back(
          {member.model_name, run_scenario(alone, config.workers).summary});
    }
  } else if (config.per_member) {
    out.per_member.push_back(
        {spec.members.front().model_name, out.pooled.summary});
  }
  if (!config.levers.empty()) {
    out.levers = run_lever_study(spec, config.levers, config.workers);
  }
  const auto values = energies(out.pooled.samples);
  out.histogram = log_histogram(values, config.output.histogram_bins);
  return out;
}

std::string simulate_document(const SimulationOutput& output) {
  return simulation_json(output).dump(2) + "\n";
}

std::string simulate_csv(const SimulationOutput& output) {
  std::string out =
      "name,mean_wh,p5_wh,q1_wh,median_wh,q3_wh,p95_wh,n\n";
  out += summary_csv_row("pooled", output.pooled.summary);
  for (const auto& m : output.per_member) out += summary_csv_row(m.name, m.summary);
  for (size_t i = 1; i < output.levers.size(); ++i) {
    out += summary_csv_row("lever:" + output.levers[i].name,
                           output.levers[i].summary);
  }
  return out;
}

std::vector<FleetReportLine> run_fleet(const RunConfig& config,
                                       const std::vector<TpsModel>& models) {
  if (!config.fleet) {
    throw ConfigError({"$.fleet: required for fleet reports"});
  }
  const FleetConfig& fleet = *config.fleet;
  const ScenarioSpec spec = build_scenario(config.scenario, models);
  std::vector<FleetReportLine> lines;

  auto mean_of = [&](const ScenarioSpec& s) {
    return run_scenario(s, config.workers).summary.mean_wh;
  };
  auto mixed_mean = [&](const ScenarioSpec& s) {
    std::vector<ScenarioResult> runs;
    for (const auto& part : fleet.mix) {
      runs.push_back(run_scenario(with_workload(s, part.workload), config.workers));
    }
    std::vector<MixPart> parts;
    for (size_t i = 0; i < runs.size(); ++i) {
      parts.push_back({runs[i].samples, fleet.mix[i].weight});
    }
    auto mixed = mix_regimes(parts, s.seed);
    return summarize(mixed).mean_wh;
  };

  lines.push_back(fleet_line("baseline", mean_of(spec), fleet.spec));
  if (fleet.improved_alpha) {
    lines.push_back(fleet_line(
        "improved", mean_of(with_alpha(spec, *fleet.improved_alpha)), fleet.spec));
  }
  if (!fleet.mix.empty()) {
    lines.push_back(fleet_line("mixed", mixed_mean(spec), fleet.spec));
    if (fleet.improved_alpha) {
      lines.push_back(fleet_line(
          "mixed_improved",
          mixed_mean(with_alpha(spec, *fleet.improved_alpha)), fleet.spec));
    }
  }
  return lines;
}

std::string fleet_document(std::span<const FleetReportLine> lines) {
  Json j;
  j["fleet"] = fleet_json(lines);
  return j.dump(2) + "\n";
}

std::string fleet_csv(std::span<const FleetReportLine> lines) {
  std::string out = "scenario,mean_wh_per_query,queries_per_day,beta,gwh_per_day\n";
  for (const auto& l : lines) {
    out += l.scenario + ',' + format_double(l.mean_wh_per_query) + ',' +
           format_double(l.queries_per_day) + ',' + format_double(l.beta) + ',' +
           format_double(l.gwh_per_day) + '\n';
  }
  return out;
}

std::string report_document(const RunConfig& config,
                            const std::vector<TpsModel>& models) {
  Json j;
  j["config"] = Json::parse(echo_run_config(config));
  j["models"] = fit_json(models);
  j["simulation"] = simulation_json(run_simulation(config, models));
  if (config.fleet) {
    const auto lines = run_fleet(config, models);
    j["fleet"] = fleet_json(lines);
    const auto b = beta_breakdown(config.fleet->spec.beta_components);
    j["beta_derivation"] = Json{{"e_uniform_kwh_per_day", b.e_uniform_kwh_per_day},
                                {"e_sin_kwh_per_day", b.e_sin_kwh_per_day},
                                {"utilization_factor", b.utilization_factor},
                                {"beta", b.beta}};
  }
  return j.dump(2) + "\n";
}

}  // namespace llm_energy
