#include "femtonet/estimate.hpp"

#include <cmath>

namespace femtonet {

namespace {
constexpr double z95 = 1.959963984540054;
}

Estimate proportion(std::uint64_t successes, std::uint64_t trials) {
  Estimate e;
  e.successes = successes;
  e.trials = trials;
  if (trials == 0) return e;
  e.defined = true;
  const double n = static_cast<double>(trials);
  e.value = static_cast<double>(successes) / n;
  if (successes == 0) {
    e.half_width = 3.0 / n;
  } else {
    e.half_width = z95 * std::sqrt(e.value * (1.0 - e.value) / n);
  }
  return e;
}

SampleSummary summarize(std::span<const double> samples) {
  SampleSummary s;
  s.count = samples.size();
  if (samples.empty()) return s;
  double sum = 0.0;
  for (double x : samples) sum += x;
  s.mean = sum / static_cast<double>(s.count);
  if (s.count < 2) return s;
  double ss = 0.0;
  for (double x : samples) ss += (x - s.mean) * (x - s.mean);
  s.stddev = std::sqrt(ss / static_cast<double>(s.count - 1));
  s.half_width = z95 * s.stddev / std::sqrt(static_cast<double>(s.count));
  return s;
}

}  // namespace femtonet
