#include <gtest/gtest.h>

#include <random>

#include "llm_energy/energy_model.h"

namespace llm_energy {
namespace {

TEST(EnergyModel, EquationOneOracle) {
  const double hand = (1.2 / 3.6) * (7.91 * 300 / 3661.85);
  EXPECT_NEAR(energy_per_query(1.2, 7.91, 300, 3661.85), hand, 1e-15);
  EXPECT_NEAR(energy_per_query(1.2, 7.91, 300, 3661.85) / 0.21601, 1.0, 1e-5);
  EXPECT_NEAR(energy_per_query(2.4, 7.91, 300, 3661.85) / 0.43202, 1.0, 1e-5);
  EXPECT_EQ(energy_per_query(1.3, 5.0, 0, 100), 0.0);
}

TEST(EnergyModel, Errors) {
  EXPECT_THROW(energy_per_query(1.2, 7.91, 300, 0), std::invalid_argument);
  EXPECT_THROW(energy_per_query(1.2, 7.91, 300, -1), std::invalid_argument);
  EXPECT_THROW(energy_per_query(0.99, 7.91, 300, 100), std::invalid_argument);
  EXPECT_THROW(apply_alpha(1.0, 0.0), std::invalid_argument);
}

TEST(EnergyModel, Homogeneity) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double pue = 1.0 + u(gen), p = u(gen), l = 100 * u(gen), tps = 100 * u(gen);
    const double c = u(gen);
    const double e = energy_per_query(pue, p, l, tps);
    // PUE must stay >= 1, so it is scaled up only.
    EXPECT_NEAR(energy_per_query(pue * (1 + c), p, l, tps) / ((1 + c) * e), 1.0, 1e-12);
    EXPECT_NEAR(energy_per_query(pue, p * c, l, tps) / (c * e), 1.0, 1e-12);
    EXPECT_NEAR(energy_per_query(pue, p, l * c, tps) / (c * e), 1.0, 1e-12);
    EXPECT_NEAR(energy_per_query(pue, p, l, tps * c) / (e / c), 1.0, 1e-12);
  }
}

TEST(EnergyModel, AlphaEquivalence) {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double pue = 1.0 + u(gen), p = u(gen), l = 100 * u(gen), tps = 100 * u(gen);
    const double alpha = u(gen);
    EXPECT_NEAR(apply_alpha(energy_per_query(pue, p, l, tps), alpha) /
                    energy_per_query(pue, p, l, tps * alpha),
                1.0, 1e-12);
  }
  EXPECT_DOUBLE_EQ(apply_alpha(0.34, 2.0), 0.17);
  EXPECT_EQ(apply_alpha(0.77, 1.0), 0.77);
  EXPECT_DOUBLE_EQ(apply_alpha(4.32, 4.32), 1.0);
}

TEST(EnergyModel, IncreasingInLengthAtCap) {
  double prev = 0.0;
  for (double l = 1; l < 1e5; l *= 1.7) {
    const double e = energy_per_query(1.2, 6.78, l, 4572.23);
    EXPECT_GT(e, prev);
    prev = e;
  }
}

TEST(EnergyModel, EffectiveLength) {
  EXPECT_EQ(effective_length(500, 300, EffectiveLengthMode::kOutputOnly), 300);
  EXPECT_EQ(effective_length(500, 300, EffectiveLengthMode::kInputPlusOutput), 800);
  EXPECT_EQ(effective_length(0, 42, EffectiveLengthMode::kOutputOnly), 42);
  EXPECT_EQ(effective_length(0, 42, EffectiveLengthMode::kInputPlusOutput), 42);
}

TEST(EnergyModel, CoupledPower) {
  const NodeSpec node;
  EXPECT_DOUBLE_EQ(coupled_node_power(0, 1234, node), 2.7);
  EXPECT_EQ(coupled_node_power(1234, 1234, node), 0.9 * 11.3);
  EXPECT_NEAR(coupled_node_power(1234, 1234, node), 10.17, 1e-12);
  EXPECT_NEAR(coupled_node_power(617, 1234, node), 6.435, 1e-12);
  EXPECT_THROW(coupled_node_power(1235, 1234, node), std::invalid_argument);
  EXPECT_THROW(coupled_node_power(-1, 1234, node), std::invalid_argument);
  double prev = 0.0;
  for (double t = 0; t <= 1000; t += 50) {
    const double p = coupled_node_power(t, 1000, node);
    EXPECT_GT(p, prev);
    prev = p;
  }
}

TEST(EnergyModel, Nodes) {
  EXPECT_EQ(scaled_node(8).p_max_kw, 11.3);
  EXPECT_EQ(scaled_node(10).p_max_kw, 14.1);
  EXPECT_EQ(scaled_node(10).p_idle_kw, 2.7);
  EXPECT_THROW(scaled_node(0), std::invalid_argument);
  EXPECT_THROW((NodeSpec{8, 2.0, 2.7}.validate()), std::invalid_argument);
  EXPECT_NO_THROW(NodeSpec{}.validate());
}

TEST(EnergyModel, ModeNames) {
  EXPECT_EQ(parse_effective_length_mode(to_string(EffectiveLengthMode::kInputPlusOutput)),
            EffectiveLengthMode::kInputPlusOutput);
  EXPECT_EQ(parse_power_mode(to_string(PowerMode::kCoupled)), PowerMode::kCoupled);
  EXPECT_THROW(parse_power_mode("bogus"), std::invalid_argument);
}

}  // namespace
}  // namespace llm_energy
