#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "llm_energy/histogram.h"

namespace llm_energy {
namespace {

TEST(Histogram, LogSpacedOverInnerQuantiles) {
  std::vector<double> v;
  for (int i = 1; i <= 10000; ++i) v.push_back(std::pow(10.0, i / 2500.0));
  auto h = log_histogram(v, 40);
  ASSERT_EQ(h.edges.size(), 41u);
  ASSERT_EQ(h.counts.size(), 40u);
  const double ratio = h.edges[1] / h.edges[0];
  for (size_t i = 1; i < h.edges.size(); ++i) {
    EXPECT_NEAR(h.edges[i] / h.edges[i - 1], ratio, 1e-9);
  }
  const auto total = std::accumulate(h.counts.begin(), h.counts.end(), int64_t{0});
  EXPECT_GE(total, 9970);
  EXPECT_LE(total, 9990);
}

TEST(Histogram, DegenerateSample) {
  auto h = log_histogram(std::vector<double>(100, 2.0), 10);
  EXPECT_EQ(std::accumulate(h.counts.begin(), h.counts.end(), int64_t{0}), 100);
  EXPECT_LT(h.edges.front(), 2.0);
  EXPECT_GT(h.edges.back(), 2.0);
}

TEST(Histogram, Errors) {
  EXPECT_THROW(log_histogram(std::vector<double>{}, 10), std::invalid_argument);
  EXPECT_THROW(log_histogram(std::vector<double>{1.0, -1.0}, 10), std::invalid_argument);
  EXPECT_THROW(log_histogram(std::vector<double>{1.0}, 0), std::invalid_argument);
}

TEST(Histogram, Smooth) {
  std::vector<int64_t> c = {3, 0, 6, 0, 3};
  auto s = smooth(c, 3);
  EXPECT_DOUBLE_EQ(s[0], 1.5);
  EXPECT_DOUBLE_EQ(s[1], 3.0);
  EXPECT_DOUBLE_EQ(s[2], 2.0);
  EXPECT_DOUBLE_EQ(s[4], 1.5);
  EXPECT_EQ(smooth(c, 1), (std::vector<double>{3, 0, 6, 0, 3}));
}

TEST(Histogram, CountModes) {
  std::vector<int64_t> one = {1, 5, 20, 60, 90, 60, 20, 5, 1};
  EXPECT_EQ(count_modes(one), 1);
  std::vector<int64_t> two = {1, 10, 60, 90, 60, 10, 2, 10, 40, 50, 40, 10, 1};
  EXPECT_EQ(count_modes(two), 2);
  // A one-bin blip is smoothed away.
  std::vector<int64_t> blip = {1, 10, 60, 90, 60, 30, 20, 23, 20, 10, 1};
  EXPECT_EQ(count_modes(blip), 1);
  // A bump below 5% of the tallest bin does not count.
  std::vector<int64_t> small = {0, 100, 300, 100, 10, 10, 10, 15, 15, 15, 10, 0};
  EXPECT_EQ(count_modes(small), 1);
  std::vector<int64_t> flat_top = {0, 5, 9, 9, 9, 5, 0};
  EXPECT_EQ(count_modes(flat_top, 1), 1);
}

}  // namespace
}  // namespace llm_energy
