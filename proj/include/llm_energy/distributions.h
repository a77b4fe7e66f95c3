#pragma once

#include "llm_energy/rng.h"

namespace llm_energy {

// Standard-normal 95th percentile.
inline constexpr double kZ95 = 1.6448536269514722;

// Distribution of exp(mu + sigma * N). sigma == 0 is a point mass at exp(mu).
struct LogNormalParams {
  double mu = 0.0;
  double sigma = 0.0;

  double median() const;
  double quantile(double p) const;
  bool operator==(const LogNormalParams&) const = default;
};

struct ExponentialParams {
  double rate = 1.0;

  double median() const;
  double quantile(double p) const;
  bool operator==(const ExponentialParams&) const = default;
};

// Fits a log-normal whose 5th and 95th percentiles are p5 and p95.
// Requires 0 < p5 <= p95.
LogNormalParams lognormal_from_quantiles(double p5, double p95);

// Requires median > 0.
ExponentialParams exponential_from_median(double median);

double standard_normal_quantile(double p);

// Inverse-CDF sampling: one uniform per draw, taken at the rng coordinates.
double sample_standard_normal(const RngState& rng);
double sample_lognormal(const LogNormalParams& params, const RngState& rng);
double sample_exponential(const ExponentialParams& params, const RngState& rng);

}  // namespace llm_energy
