#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "femtonet/config.hpp"
#include "femtonet/sim.hpp"
#include "femtonet/traffic.hpp"

namespace femtonet {

/// Per-seed metrics reduced to across-seed means with 95% half-widths.
struct SeedAggregate {
  SampleSummary P_B_m;
  SampleSummary P_D_m;
  SampleSummary P_B_f;
  SampleSummary P_D_f;
  SampleSummary forced_termination;
  SampleSummary alpha;
  SampleSummary macro_channel_release_rate;
  bool conserved = true;
};

SeedAggregate aggregate(const std::vector<MetricsReport>& reports);

/// Runs seeds config.sim.seed .. config.sim.seed + count - 1 on `jobs` threads.
std::vector<MetricsReport> run_seeds(const ScenarioConfig& config, int count, int jobs);

struct SweepOptions {
  std::string param = "n";  // full key or a bare topology/traffic key
  double from = 0.0;
  double to = 1000.0;
  int points = 11;
  int seeds = 0;  // 0: analytic columns only
  int jobs = 1;
};

struct SweepPoint {
  double value = 0.0;
  ScenarioConfig config;
  TrafficSolution analytic;
  std::vector<MetricsReport> runs;
  SeedAggregate sim;
  // Solver re-run at the measured alpha when sim.alpha_feedback is set.
  bool has_feedback = false;
  TrafficSolution feedback;
};

/// Resolves shorthand such as "n" to "topology.n". Throws ConfigError.
std::string resolve_param(const std::string& param);

std::vector<SweepPoint> run_sweep(const ScenarioConfig& base, const SweepOptions& options);

std::vector<std::string> analytic_csv_header();
std::vector<std::string> analytic_csv_row(const TrafficParams& params,
                                          const TrafficSolution& solution);

void write_sweep_csv(std::ostream& out, const std::string& param,
                     const std::vector<SweepPoint>& points);

}  // namespace femtonet
