#include <gtest/gtest.h>

#include "llm_energy/fleet.h"

namespace llm_energy {
namespace {

TEST(Fleet, BetaDefaults) {
  const auto b = beta_breakdown(BetaComponents{});
  EXPECT_NEAR(b.e_sin_kwh_per_day, 219.6, 1e-9);
  EXPECT_NEAR(b.e_uniform_kwh_per_day, 271.2, 1e-9);
  EXPECT_NEAR(b.utilization_factor, 1.0796, 1e-4);
  EXPECT_NEAR(b.beta, 1.3301, 1e-4);
  EXPECT_GE(compute_beta(BetaComponents{}), 1.329);
  EXPECT_LE(compute_beta(BetaComponents{}), 1.331);
}

TEST(Fleet, BetaTrivialCases) {
  EXPECT_DOUBLE_EQ(compute_beta({1.0, 11.3, 2.7, 1.0, 1.0}), 1.0);
  for (double f : {0.1, 0.5, 0.75, 1.0}) {
    EXPECT_NEAR(compute_beta({f, 11.3, 0.0, 1.0, 1.0}), 1.0, 1e-12);
  }
}

TEST(Fleet, BetaDecreasingInUtilization) {
  double prev = 1e9;
  for (double f = 0.05; f <= 1.0; f += 0.05) {
    const double b = compute_beta({f, 11.3, 2.7, 1.1, 1.12});
    EXPECT_LT(b, prev);
    prev = b;
  }
}

TEST(Fleet, BetaValidation) {
  EXPECT_THROW(compute_beta({0.0, 11.3, 2.7, 1.1, 1.12}), std::invalid_argument);
  EXPECT_THROW(compute_beta({1.2, 11.3, 2.7, 1.1, 1.12}), std::invalid_argument);
  EXPECT_THROW(compute_beta({0.75, 11.3, 2.7, 0.9, 1.12}), std::invalid_argument);
}

TEST(Fleet, DailyEnergy) {
  EXPECT_NEAR(daily_energy(0.6, 1e9, 1.33), 0.798, 1e-12);
  EXPECT_DOUBLE_EQ(daily_energy(3.5, 1, 1), 3.5e-9);
  EXPECT_DOUBLE_EQ(daily_energy(1.2, 1e9, 1.33), 2 * daily_energy(0.6, 1e9, 1.33));
  EXPECT_DOUBLE_EQ(daily_energy(0.6, 3e9, 1.33), 3 * daily_energy(0.6, 1e9, 1.33));
}

TEST(Fleet, ResolvedBeta) {
  FleetSpec spec;
  EXPECT_NEAR(spec.resolved_beta(), 1.3301, 1e-4);
  spec.beta = 1.33;
  EXPECT_EQ(spec.resolved_beta(), 1.33);
  auto line = fleet_line("baseline", 0.6, spec);
  EXPECT_EQ(line.scenario, "baseline");
  EXPECT_NEAR(line.gwh_per_day, 0.798, 1e-12);
  spec.beta = 0.5;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace llm_energy
