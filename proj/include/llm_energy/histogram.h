#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace llm_energy {

struct Histogram {
  std::vector<double> edges;    // size = counts.size() + 1, increasing
  std::vector<int64_t> counts;  // values outside [edges.front(), edges.back()] are dropped
};

// Logarithmically spaced bins over [P0.1, P99.9] of the (positive) values.
Histogram log_histogram(std::span<const double> values, int bins = 50);

// Centered moving average; the window shrinks at the edges.
std::vector<double> smooth(std::span<const int64_t> counts, int window = 3);

// Number of peaks in the smoothed counts. A peak is a maximal plateau higher
// than its neighbours whose prominence (height above the higher of the two
// lowest points separating it from taller peaks or the edges) is at least
// min_prominence_fraction of the tallest smoothed bin.
int count_modes(std::span<const int64_t> counts, int window = 3,
                double min_prominence_fraction = 0.05);

}  // namespace llm_energy
