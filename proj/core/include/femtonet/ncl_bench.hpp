#pragma once

#include <cstdint>
#include <vector>

#include "femtonet/config.hpp"
#include "femtonet/estimate.hpp"

namespace femtonet {

/// One handover situation: an MS just outside its serving FAP looking for
/// the nearest accessible FAP within d_max.
struct NclTrial {
  std::uint64_t seed = 0;
  int n = 0;
  std::size_t traditional_size = 0;
  std::size_t proposed_size = 0;
  std::ptrdiff_t n_f = 0;
  bool has_target = false;
  bool target_in_proposed = false;
  bool target_in_traditional = false;
  // SON-known hidden FAPs within d_max, and how many made it into the list.
  std::size_t hidden_known = 0;
  std::size_t hidden_included = 0;
};

struct NclBenchOptions {
  std::vector<int> densities = {100, 200, 400, 600, 800, 1000};
  int seeds = 30;
  int trials_per_seed = 2000;
  std::uint64_t base_seed = 1;
  int jobs = 1;
};

struct NclDensitySummary {
  int n = 0;
  std::size_t trials = 0;
  SampleSummary traditional_size;
  SampleSummary proposed_size;
  Estimate missing_traditional;
  Estimate missing_proposed;
  std::size_t hidden_known = 0;
  std::size_t hidden_included = 0;
};

/// Trials for one topology drawn from (config.topology with n, seed).
std::vector<NclTrial> ncl_trials(const ScenarioConfig& config, int n, std::uint64_t seed,
                                 int trials);

/// All trials in (density, seed, trial) order; deterministic for any `jobs`.
std::vector<NclTrial> ncl_bench(const ScenarioConfig& config, const NclBenchOptions& options);

std::vector<NclDensitySummary> summarize_ncl(const std::vector<NclTrial>& trials);

}  // namespace femtonet
