#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace llm_energy {

// Raised for malformed or unreadable input data (benchmark CSV, sample CSV).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kBenchmarkHeader =
    "model,tp_size,quantization,tps,input_length,output_length,source";

// One measured throughput observation for a model served on a single node.
struct BenchmarkRecord {
  std::string model_name;
  int32_t tp_size = 1;
  std::string quantization;
  double tps = 0.0;
  int64_t l_in = 1;
  int64_t l_out = 1;
  std::string source;

  bool operator==(const BenchmarkRecord&) const = default;
};

// Parses benchmark CSV text. The first line must be exactly kBenchmarkHeader.
// Throws DataError naming the 1-based line number and field on bad rows.
std::vector<BenchmarkRecord> parse_benchmarks(std::string_view csv_text);

std::string serialize_benchmarks(const std::vector<BenchmarkRecord>& records);

std::vector<BenchmarkRecord> load_benchmarks(const std::filesystem::path& path);

std::vector<BenchmarkRecord> records_for_model(
    const std::vector<BenchmarkRecord>& records, std::string_view model_name);

// Distinct model names in first-appearance order.
std::vector<std::string> model_names(
    const std::vector<BenchmarkRecord>& records);

}  // namespace llm_energy
