#include "llm_energy/benchmark_data.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace llm_energy {
namespace {

constexpr const char* kFieldNames[] = {"model",        "tp_size",
                                       "quantization", "tps",
                                       "input_length", "output_length",
                                       "source"};

std::string_view trim_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

[[noreturn]] void fail(size_t line_no, int field, const std::string& what) {
  std::ostringstream msg;
  msg << "benchmark CSV line " << line_no;
  if (field >= 0) msg << ", field '" << kFieldNames[field] << "'";
  msg << ": " << what;
  throw DataError(msg.str());
}

template <typename T>
T parse_number(std::string_view text, size_t line_no, int field) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    fail(line_no, field, "cannot parse '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::vector<BenchmarkRecord> parse_benchmarks(std::string_view csv_text) {
  std::vector<BenchmarkRecord> records;
  size_t line_no = 0;
  bool seen_header = false;
  size_t pos = 0;
  while (pos < csv_text.size()) {
    size_t eol = csv_text.find('\n', pos);
    if (eol == std::string_view::npos) eol = csv_text.size();
    std::string_view line = trim_cr(csv_text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;

    if (!seen_header) {
      if (line.size() >= 3 && line.substr(0, 3) == "\xEF\xBB\xBF") {
        line.remove_prefix(3);
      }
      if (line != kBenchmarkHeader) {
        fail(line_no, -1,
             "expected header '" + std::string(kBenchmarkHeader) + "'");
      }
      seen_header = true;
      continue;
    }
    if (line.empty()) continue;

    auto fields = split_commas(line);
    if (fields.size() != 7) {
      fail(line_no, -1,
           "expected 7 fields, found " + std::to_string(fields.size()));
    }
    BenchmarkRecord r;
    r.model_name = std::string(fields[0]);
    if (r.model_name.empty()) fail(line_no, 0, "empty model name");
    r.tp_size = parse_number<int32_t>(fields[1], line_no, 1);
    if (r.tp_size < 1) fail(line_no, 1, "must be >= 1");
    r.quantization = std::string(fields[2]);
    r.tps = parse_number<double>(fields[3], line_no, 3);
    if (!(r.tps > 0.0)) fail(line_no, 3, "must be > 0");
    r.l_in = parse_number<int64_t>(fields[4], line_no, 4);
    if (r.l_in < 1) fail(line_no, 4, "must be >= 1");
    r.l_out = parse_number<int64_t>(fields[5], line_no, 5);
    if (r.l_out < 1) fail(line_no, 5, "must be >= 1");
    r.source = std::string(fields[6]);
    records.push_back(std::move(r));
  }
  if (!seen_header) throw DataError("benchmark CSV is empty");
  return records;
}

std::string serialize_benchmarks(const std::vector<BenchmarkRecord>& records) {
  std::string out(kBenchmarkHeader);
  out += '\n';
  char buf[64];
  for (const auto& r : records) {
    // Shortest round-trip representation keeps parse(serialize(x)) == x.
    auto res = std::to_chars(buf, buf + sizeof(buf), r.tps);
    out += r.model_name;
    out += ',';
    out += std::to_string(r.tp_size);
    out += ',';
    out += r.quantization;
    out += ',';
    out.append(buf, res.ptr);
    out += ',';
    out += std::to_string(r.l_in);
    out += ',';
    out += std::to_string(r.l_out);
    out += ',';
    out += r.source;
    out += '\n';
  }
  return out;
}

std::vector<BenchmarkRecord> load_benchmarks(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open benchmark file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_benchmarks(buf.str());
}

std::vector<BenchmarkRecord> records_for_model(
    const std::vector<BenchmarkRecord>& records, std::string_view model_name) {
  std::vector<BenchmarkRecord> out;
  std::copy_if(records.begin(), records.end(), std::back_inserter(out),
               [&](const BenchmarkRecord& r) { return r.model_name == model_name; });
  return out;
}

std::vector<std::string> model_names(
    const std::vector<BenchmarkRecord>& records) {
  std::vector<std::string> names;
  for (const auto& r : records) {
    if (std::find(names.begin(), names.end(), r.model_name) == names.end()) {
      names.push_back(r.model_name);
    }
  }
  return names;
}

}  // namespace llm_energy
