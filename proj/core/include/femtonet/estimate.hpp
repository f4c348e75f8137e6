#pragma once

#include <cstdint>
#include <span>

namespace femtonet {

/// Ratio estimate with a 95% confidence half-width.
struct Estimate {
  double value = 0.0;
  double half_width = 0.0;
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  bool defined = false;

  double lower() const { return value - half_width; }
  double upper() const { return value + half_width; }
};

/// Normal approximation; zero successes use the rule-of-three bound 3/n.
/// Zero trials give an undefined estimate.
Estimate proportion(std::uint64_t successes, std::uint64_t trials);

struct SampleSummary {
  double mean = 0.0;
  double half_width = 0.0;  // 95%, normal approximation
  double stddev = 0.0;
  std::size_t count = 0;
};

SampleSummary summarize(std::span<const double> samples);

}  // namespace femtonet
