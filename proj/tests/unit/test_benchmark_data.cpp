#include <gtest/gtest.h>

#include <random>
#include <string>

#include "llm_energy/benchmark_data.h"

namespace llm_energy {
namespace {

const std::string kHeader = std::string(kBenchmarkHeader) + "\n";

std::vector<BenchmarkRecord> shipped() {
  return load_benchmarks(LLM_ENERGY_DATA_DIR "/tps_benchmarks.csv");
}

std::string error_of(const std::string& text) {
  try {
    parse_benchmarks(text);
  } catch (const DataError& e) {
    return e.what();
  }
  return "";
}

TEST(BenchmarkData, ParsesLlama405BRow) {
  auto r = parse_benchmarks(
      kHeader + "Llama 3.1 405B,8,FP8,3661.85,500,2000,tensorRT-LLM-May2025 v019\n");
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].model_name, "Llama 3.1 405B");
  EXPECT_EQ(r[0].tp_size, 8);
  EXPECT_EQ(r[0].quantization, "FP8");
  EXPECT_EQ(r[0].tps, 3661.85);
  EXPECT_EQ(r[0].l_in, 500);
  EXPECT_EQ(r[0].l_out, 2000);
  EXPECT_EQ(r[0].source, "tensorRT-LLM-May2025 v019");
}

TEST(BenchmarkData, ParsesDeepSeekRow) {
  auto r = parse_benchmarks(
      kHeader + "DeepSeek-R1,10,FP8,886.00,1024,1024,tensorRT-LLM-DeepSeekR1");
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].tp_size, 10);
  EXPECT_EQ(r[0].tps, 886.0);
}

TEST(BenchmarkData, HeaderOnlyIsEmpty) {
  EXPECT_TRUE(parse_benchmarks(kHeader).empty());
  EXPECT_TRUE(parse_benchmarks(std::string(kBenchmarkHeader)).empty());
}

TEST(BenchmarkData, EmptyFileIsError) {
  EXPECT_THROW(parse_benchmarks(""), DataError);
}

TEST(BenchmarkData, WrongHeaderIsError) {
  EXPECT_NE(error_of("model,tps\nx,1\n").find("line 1"), std::string::npos);
}

TEST(BenchmarkData, ErrorsNameRowAndField) {
  const std::string good = "A,8,FP8,100,500,300,src\n";
  auto msg = error_of(kHeader + good + "A,8,FP8,abc,500,300,src\n");
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
  EXPECT_NE(msg.find("'tps'"), std::string::npos) << msg;

  msg = error_of(kHeader + "A,0,FP8,100,500,300,src\n");
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
  EXPECT_NE(msg.find("'tp_size'"), std::string::npos) << msg;

  msg = error_of(kHeader + "A,8,FP8,100,0,300,src\n");
  EXPECT_NE(msg.find("'input_length'"), std::string::npos) << msg;

  msg = error_of(kHeader + "A,8,FP8,100,500,2.5,src\n");
  EXPECT_NE(msg.find("'output_length'"), std::string::npos) << msg;

  msg = error_of(kHeader + "A,8,FP8,-3,500,300,src\n");
  EXPECT_NE(msg.find("'tps'"), std::string::npos) << msg;

  msg = error_of(kHeader + ",8,FP8,100,500,300,src\n");
  EXPECT_NE(msg.find("'model'"), std::string::npos) << msg;

  msg = error_of(kHeader + "A,8,FP8,100,500\n");
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
}

TEST(BenchmarkData, AcceptsCrlfAndBom) {
  auto r = parse_benchmarks("\xEF\xBB\xBF" + std::string(kBenchmarkHeader) +
                            "\r\nA,8,FP8,100,500,300,src\r\n");
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].source, "src");
}

TEST(BenchmarkData, ShippedDatasetMatchesTable) {
  auto records = shipped();
  EXPECT_EQ(records.size(), 38u);
  EXPECT_EQ(records_for_model(records, "Llama 3.1 405B").size(), 13u);
  EXPECT_EQ(records_for_model(records, "Llama 3.1 70B").size(), 11u);
  EXPECT_EQ(records_for_model(records, "Mixtral 8x22B").size(), 9u);
  EXPECT_EQ(records_for_model(records, "DeepSeek-R1").size(), 3u);
  EXPECT_EQ(records_for_model(records, "Llama-3.1 Nemotron Ultra 253B").size(), 2u);
  EXPECT_TRUE(records_for_model(records, "GPT-5").empty());
  EXPECT_EQ(model_names(records).size(), 5u);
}

TEST(BenchmarkData, RecordsForModelPreservesOrder) {
  auto records = shipped();
  auto ds = records_for_model(records, "DeepSeek-R1");
  ASSERT_EQ(ds.size(), 3u);
  EXPECT_EQ(ds[0].tps, 886.0);
  EXPECT_EQ(ds[1].tps, 1300.0);
  EXPECT_EQ(ds[2].tps, 378.0);
}

TEST(BenchmarkData, RoundTripShipped) {
  auto records = shipped();
  EXPECT_EQ(parse_benchmarks(serialize_benchmarks(records)), records);
}

TEST(BenchmarkData, RoundTripRandom) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> tps(1e-3, 1e6);
  std::uniform_int_distribution<int64_t> len(1, 200000);
  std::uniform_int_distribution<int32_t> tp(1, 64);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<BenchmarkRecord> records;
    for (int i = 0; i < 20; ++i) {
      records.push_back({"model " + std::to_string(i % 3), tp(gen), "BF16",
                         tps(gen), len(gen), len(gen), "s" + std::to_string(i)});
    }
    auto once = parse_benchmarks(serialize_benchmarks(records));
    EXPECT_EQ(once, records);
    EXPECT_EQ(parse_benchmarks(serialize_benchmarks(once)), once);
  }
}

TEST(BenchmarkData, MissingFileIsError) {
  EXPECT_THROW(load_benchmarks("/nonexistent/bench.csv"), DataError);
}

}  // namespace
}  // namespace llm_energy
