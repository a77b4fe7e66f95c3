#include "llm_energy/distributions.h"

#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <stdexcept>
#include <string>

namespace llm_energy {

double LogNormalParams::median() const { return std::exp(mu); }

double LogNormalParams::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("quantile level must be in (0, 1)");
  }
  if (sigma == 0.0) return std::exp(mu);
  return std::exp(mu + sigma * standard_normal_quantile(p));
}

double ExponentialParams::median() const { return std::log(2.0) / rate; }

double ExponentialParams::quantile(double p) const {
  if (!(p >= 0.0 && p < 1.0)) {
    throw std::invalid_argument("quantile level must be in [0, 1)");
  }
  return -std::log1p(-p) / rate;
}

LogNormalParams lognormal_from_quantiles(double p5, double p95) {
  if (!(p5 > 0.0)) {
    throw std::invalid_argument("lognormal P5 must be positive, got " +
                                std::to_string(p5));
  }
  if (!(p95 >= p5)) {
    throw std::invalid_argument("lognormal P95 must be >= P5");
  }
  double log_lo = std::log(p5);
  double log_hi = std::log(p95);
  return {0.5 * (log_lo + log_hi), (log_hi - log_lo) / (2.0 * kZ95)};
}

ExponentialParams exponential_from_median(double median) {
  if (!(median > 0.0)) {
    throw std::invalid_argument("exponential median must be positive");
  }
  return {std::log(2.0) / median};
}

double standard_normal_quantile(double p) {
  static const boost::math::normal_distribution<double> kStandard(0.0, 1.0);
  return boost::math::quantile(kStandard, p);
}

double sample_standard_normal(const RngState& rng) {
  return standard_normal_quantile(uniform01(rng));
}

double sample_lognormal(const LogNormalParams& params, const RngState& rng) {
  if (params.sigma == 0.0) return std::exp(params.mu);
  return std::exp(params.mu + params.sigma * sample_standard_normal(rng));
}

double sample_exponential(const ExponentialParams& params, const RngState& rng) {
  return params.quantile(uniform01(rng));
}

}  // namespace llm_energy
