#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "llm_energy/benchmark_data.h"

namespace llm_energy {

enum class FitMethod {
  kOrdinaryLeastSquares,  // full-rank design, unique solution
  kMinimumNorm,           // rank-deficient, pseudoinverse solution
  kPooledAnchor,          // rank-deficient, least squares nearest pooled slopes
};

std::string_view to_string(FitMethod method);

// log(tps) = beta0 + beta1 * log(l_in) + beta2 * log(l_out), clipped at
// tps_cap (the largest throughput observed for the model).
struct TpsModel {
  std::string model_name;
  double beta0 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double tps_cap = 0.0;
  int64_t n_obs = 0;
  FitMethod method = FitMethod::kOrdinaryLeastSquares;

  double predict_uncapped(double l_in, double l_out) const;
};

// Per-model ordinary least squares in natural-log space. Rank-deficient
// designs (fewer than 3 rows, or collinear rows) fall back to the
// minimum-norm least-squares solution. Records must share one model name.
TpsModel fit_log_linear(const std::vector<BenchmarkRecord>& records);

// Requires l_in >= 1 and l_out >= 1.
double predict_tps(const TpsModel& model, double l_in, double l_out);

enum class UnderdeterminedPolicy {
  kMinimumNorm,
  // Pooled slopes come from a fixed-effects regression over every full-rank
  // model (one intercept per model, shared slopes). A rank-deficient model
  // takes the least-squares solution on its own rows whose (beta1, beta2)
  // is nearest the pooled slopes, so consistent rows are still reproduced.
  kPooledAnchor,
};

// Fits every model present in `records`, in first-appearance order.
std::vector<TpsModel> fit_models(
    const std::vector<BenchmarkRecord>& records,
    UnderdeterminedPolicy policy = UnderdeterminedPolicy::kPooledAnchor);

// Sum of squared residuals of log(tps) over `records`, uncapped.
double log_residual_sum_of_squares(const TpsModel& model,
                                   const std::vector<BenchmarkRecord>& records);

const TpsModel* find_model(const std::vector<TpsModel>& models,
                           std::string_view name);

}  // namespace llm_energy
