#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "llm_energy/benchmark_data.h"
#include "llm_energy/tps_model.h"

namespace llm_energy {
namespace {

const std::vector<BenchmarkRecord>& shipped() {
  static const auto records = load_benchmarks(LLM_ENERGY_DATA_DIR "/tps_benchmarks.csv");
  return records;
}

TpsModel fit_named(const std::string& name) {
  return fit_log_linear(records_for_model(shipped(), name));
}

TEST(TpsModel, DeepSeekInterpolatesExactly) {
  auto m = fit_named("DeepSeek-R1");
  EXPECT_EQ(m.n_obs, 3);
  EXPECT_EQ(m.method, FitMethod::kOrdinaryLeastSquares);
  EXPECT_EQ(m.tps_cap, 1300.0);
  EXPECT_NEAR(predict_tps(m, 1024, 1024) / 886.0, 1.0, 1e-3);
  EXPECT_NEAR(predict_tps(m, 500, 2000) / 1300.0, 1.0, 1e-3);
  EXPECT_NEAR(predict_tps(m, 5000, 500) / 378.0, 1.0, 1e-3);
}

TEST(TpsModel, SingleRecordMinimumNorm) {
  auto m = fit_log_linear({{"synthetic", 8, "FP8", 1000.0, 100, 100, "test"}});
  EXPECT_EQ(m.method, FitMethod::kMinimumNorm);
  EXPECT_EQ(m.n_obs, 1);
  EXPECT_NEAR(predict_tps(m, 100, 100) / 1000.0, 1.0, 1e-3);
}

TEST(TpsModel, Errors) {
  EXPECT_THROW(fit_log_linear({}), std::invalid_argument);
  EXPECT_THROW(fit_log_linear({{"a", 8, "", 1.0, 1, 1, ""}, {"b", 8, "", 1.0, 1, 1, ""}}),
               std::invalid_argument);
  auto m = fit_named("DeepSeek-R1");
  EXPECT_THROW(predict_tps(m, 0.5, 100), std::invalid_argument);
  EXPECT_THROW(predict_tps(m, 100, 0), std::invalid_argument);
}

// No point of a 0.01 grid around the OLS solution has a smaller residual.
TEST(TpsModel, Llama405BBeatsGridSearch) {
  const auto records = records_for_model(shipped(), "Llama 3.1 405B");
  ASSERT_EQ(records.size(), 13u);
  auto m = fit_log_linear(records);
  const double rss = log_residual_sum_of_squares(m, records);

  std::vector<double> a, b, y;
  double mean_y = 0.0;
  for (const auto& r : records) {
    a.push_back(std::log(static_cast<double>(r.l_in)));
    b.push_back(std::log(static_cast<double>(r.l_out)));
    y.push_back(std::log(r.tps));
    mean_y += y.back();
  }
  mean_y /= static_cast<double>(y.size());
  double constant_rss = 0.0;
  for (double v : y) constant_rss += (v - mean_y) * (v - mean_y);
  EXPECT_LE(rss, constant_rss);

  const double c0 = std::round(m.beta0 * 100) / 100;
  const double c1 = std::round(m.beta1 * 100) / 100;
  const double c2 = std::round(m.beta2 * 100) / 100;
  double best = std::numeric_limits<double>::infinity();
  for (int i = -50; i <= 50; ++i) {
    for (int j = -50; j <= 50; ++j) {
      for (int k = -50; k <= 50; ++k) {
        const double b0 = c0 + 0.01 * i, b1 = c1 + 0.01 * j, b2 = c2 + 0.01 * k;
        double s = 0.0;
        for (size_t n = 0; n < y.size(); ++n) {
          const double e = y[n] - b0 - b1 * a[n] - b2 * b[n];
          s += e * e;
        }
        best = std::min(best, s);
      }
    }
  }
  EXPECT_LE(rss, best);
}

TEST(TpsModel, CapEqualsMaxObserved) {
  for (const auto& m : fit_models(shipped())) {
    double max_tps = 0.0;
    for (const auto& r : records_for_model(shipped(), m.model_name)) {
      max_tps = std::max(max_tps, r.tps);
    }
    EXPECT_EQ(m.tps_cap, max_tps) << m.model_name;
  }
}

TEST(TpsModel, CapDominance) {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> log_len(0.0, std::log(200000.0));
  for (auto policy : {UnderdeterminedPolicy::kPooledAnchor, UnderdeterminedPolicy::kMinimumNorm}) {
    for (const auto& m : fit_models(shipped(), policy)) {
      bool binds = false;
      for (int i = 0; i < 10000; ++i) {
        const double l_in = std::exp(log_len(gen));
        const double l_out = std::exp(log_len(gen));
        const double p = predict_tps(m, l_in, l_out);
        ASSERT_LE(p, m.tps_cap) << m.model_name;
        ASSERT_GT(p, 0.0);
        if (m.predict_uncapped(l_in, l_out) > m.tps_cap) {
          ASSERT_EQ(p, m.tps_cap);
          binds = true;
        }
      }
      EXPECT_TRUE(binds) << m.model_name;
    }
  }
}

TEST(TpsModel, ShippedSlopeSigns) {
  for (const auto& m : fit_models(shipped())) {
    EXPECT_LT(m.beta1, 0.0) << m.model_name;
    EXPECT_LT(m.beta2, 1.0) << m.model_name;
  }
}

TEST(TpsModel, MinimumNormNemotronBreaksSlopeBound) {
  auto models = fit_models(shipped(), UnderdeterminedPolicy::kMinimumNorm);
  const TpsModel* m = find_model(models, "Llama-3.1 Nemotron Ultra 253B");
  ASSERT_NE(m, nullptr);
  EXPECT_EQ(m->method, FitMethod::kMinimumNorm);
  EXPECT_GT(m->beta2, 1.0);
}

TEST(TpsModel, UnderdeterminedFitsReproduceTrainingRows) {
  for (auto policy : {UnderdeterminedPolicy::kPooledAnchor, UnderdeterminedPolicy::kMinimumNorm}) {
    auto models = fit_models(shipped(), policy);
    for (const char* name : {"DeepSeek-R1", "Llama-3.1 Nemotron Ultra 253B"}) {
      const TpsModel* m = find_model(models, name);
      ASSERT_NE(m, nullptr);
      for (const auto& r : records_for_model(shipped(), name)) {
        EXPECT_NEAR(predict_tps(*m, r.l_in, r.l_out) / r.tps, 1.0, 1e-3) << name;
      }
    }
  }
}

TEST(TpsModel, PooledAnchorLeavesFullRankModelsAlone) {
  auto anchored = fit_models(shipped(), UnderdeterminedPolicy::kPooledAnchor);
  auto plain = fit_models(shipped(), UnderdeterminedPolicy::kMinimumNorm);
  ASSERT_EQ(anchored.size(), 5u);
  for (size_t k = 0; k < anchored.size(); ++k) {
    if (plain[k].method != FitMethod::kOrdinaryLeastSquares) {
      EXPECT_EQ(anchored[k].method, FitMethod::kPooledAnchor);
      continue;
    }
    EXPECT_EQ(anchored[k].beta0, plain[k].beta0);
    EXPECT_EQ(anchored[k].beta1, plain[k].beta1);
    EXPECT_EQ(anchored[k].beta2, plain[k].beta2);
  }
}

TEST(TpsModel, PooledAnchorSingleRowKeepsPooledSlopes) {
  auto records = shipped();
  records.push_back({"Solo", 8, "FP8", 1000.0, 100, 100, "test"});
  auto models = fit_models(records);
  const TpsModel* solo = find_model(models, "Solo");
  const TpsModel* nemotron = find_model(models, "Llama-3.1 Nemotron Ultra 253B");
  ASSERT_NE(solo, nullptr);
  EXPECT_NEAR(predict_tps(*solo, 100, 100), 1000.0, 1e-6);
  // Nemotron's slopes moved away from the pooled ones only along the
  // direction its two rows constrain, so Solo (unconstrained) differs.
  EXPECT_NE(solo->beta1, nemotron->beta1);
  EXPECT_LT(solo->beta1, 0.0);
}

TEST(TpsModel, Llama70BLongContextSanity) {
  auto m = fit_named("Llama 3.1 70B");
  const double p = predict_tps(m, 20000, 2000);
  EXPECT_LT(p, 1568.84 * 1.5);
  EXPECT_GT(p, 1568.84 / 1.5);
}

TEST(TpsModel, Deterministic) {
  auto a = fit_models(shipped());
  auto b = fit_models(shipped());
  ASSERT_EQ(a.size(), b.size());
  for (size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].beta0, b[k].beta0);
    EXPECT_EQ(a[k].beta1, b[k].beta1);
    EXPECT_EQ(a[k].beta2, b[k].beta2);
  }
}

TEST(TpsModel, FindModel) {
  auto models = fit_models(shipped());
  EXPECT_NE(find_model(models, "Mixtral 8x22B"), nullptr);
  EXPECT_EQ(find_model(models, "mixtral"), nullptr);
}

}  // namespace
}  // namespace llm_energy
