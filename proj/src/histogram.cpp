#include "llm_energy/histogram.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "llm_energy/scenario.h"

namespace llm_energy {

Histogram log_histogram(std::span<const double> values, int bins) {
  if (bins < 1) throw std::invalid_argument("histogram needs >= 1 bin");
  if (values.empty()) throw std::invalid_argument("histogram of no values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  if (!(sorted.front() > 0.0)) {
    throw std::invalid_argument("log histogram needs positive values");
  }
  double lo = sorted_quantile(sorted, 0.001);
  double hi = sorted_quantile(sorted, 0.999);
  if (!(hi > lo)) {
    // Degenerate sample: one bin-width either side of the point.
    lo *= 0.999;
    hi = lo / 0.999 * 1.001;
  }

  Histogram h;
  h.edges.resize(static_cast<size_t>(bins) + 1);
  const double log_lo = std::log(lo);
  const double step = (std::log(hi) - log_lo) / bins;
  for (int i = 0; i <= bins; ++i) {
    h.edges[static_cast<size_t>(i)] = std::exp(log_lo + step * i);
  }
  h.edges.front() = lo;
  h.edges.back() = hi;
  h.counts.assign(static_cast<size_t>(bins), 0);
  for (double v : sorted) {
    if (v < lo || v > hi) continue;
    auto bin = static_cast<int>(std::floor((std::log(v) - log_lo) / step));
    bin = std::clamp(bin, 0, bins - 1);
    ++h.counts[static_cast<size_t>(bin)];
  }
  return h;
}

std::vector<double> smooth(std::span<const int64_t> counts, int window) {
  if (window < 1) throw std::invalid_argument("smoothing window must be >= 1");
  const int half = window / 2;
  const auto n = static_cast<int>(counts.size());
  std::vector<double> out(counts.size());
  for (int i = 0; i < n; ++i) {
    int a = std::max(0, i - half);
    int b = std::min(n - 1, i + half);
    double sum = 0.0;
    for (int j = a; j <= b; ++j) sum += static_cast<double>(counts[static_cast<size_t>(j)]);
    out[static_cast<size_t>(i)] = sum / (b - a + 1);
  }
  return out;
}

int count_modes(std::span<const int64_t> counts, int window,
                double min_prominence_fraction) {
  const std::vector<double> y = smooth(counts, window);
  const auto n = static_cast<int>(y.size());
  if (n < 3) return 0;
  const double tallest = *std::max_element(y.begin(), y.end());
  const double threshold = min_prominence_fraction * tallest;

  int modes = 0;
  int i = 1;
  while (i < n - 1) {
    if (!(y[i] > y[i - 1])) {
      ++i;
      continue;
    }
    int plateau_end = i;
    while (plateau_end + 1 < n && y[plateau_end + 1] == y[i]) ++plateau_end;
    if (plateau_end == n - 1 || !(y[plateau_end + 1] < y[i])) {
      i = plateau_end + 1;
      continue;
    }
    const double height = y[i];
    double left_min = height;
    for (int j = i - 1; j >= 0 && y[j] <= height; --j) {
      left_min = std::min(left_min, y[j]);
    }
    double right_min = height;
    for (int j = plateau_end + 1; j < n && y[j] <= height; ++j) {
      right_min = std::min(right_min, y[j]);
    }
    if (height - std::max(left_min, right_min) >= threshold) ++modes;
    i = plateau_end + 1;
  }
  return modes;
}

}  // namespace llm_energy
