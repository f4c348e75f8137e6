#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>

#include "femtonet/config.hpp"
#include "femtonet/estimate.hpp"
#include "femtonet/signaling.hpp"

namespace femtonet {

enum class CallOrigin { FemtoArea, MacroArea, MacroHandoverIn };
inline constexpr std::size_t kOriginCount = 3;
inline constexpr std::size_t kClassCount = 2;  // 0 non-adaptive, 1 adaptive

/// Whole-run session accounting for one (class, origin) pair.
struct Conservation {
  std::uint64_t arrivals = 0;
  std::uint64_t blocked = 0;
  std::uint64_t ended = 0;
  std::uint64_t dropped = 0;
  std::uint64_t handed_out = 0;
  std::uint64_t active = 0;

  bool balanced() const { return arrivals == blocked + ended + dropped + handed_out + active; }
};

struct FlowStats {
  std::uint64_t attempts = 0;   // handover events of this kind
  std::uint64_t completed = 0;  // completed signaling traces
  std::uint64_t aborted = 0;    // aborted signaling traces
  std::uint64_t messages = 0;
  double latency_s = 0.0;

  double mean_messages() const {
    const auto traces = completed + aborted;
    return traces ? static_cast<double>(messages) / static_cast<double>(traces) : 0.0;
  }
};

struct MetricsReport {
  Estimate P_B_m;
  Estimate P_D_m;
  Estimate P_B_f;
  Estimate P_D_f;
  Estimate forced_termination;
  Estimate alpha;
  Estimate missing_target;
  SampleSummary neighbor_list_size;
  double macro_channel_release_rate = 0.0;
  std::array<FlowStats, 3> flows{};  // indexed by Flow
  std::uint64_t m2m_handovers = 0;
  std::uint64_t degraded_calls = 0;

  std::array<std::array<Conservation, kOriginCount>, kClassCount> conservation{};
  std::uint64_t events = 0;
  std::uint64_t ledger_checks = 0;
  std::uint64_t ledger_violations = 0;
  // Completed handovers whose signaling trace was missing or of the wrong flow.
  std::uint64_t linkage_violations = 0;

  bool conserved() const;
  const FlowStats& flow(Flow f) const { return flows[static_cast<std::size_t>(f)]; }
};

struct RunOptions {
  // CSV rows: time,session,event_kind,outcome,granted,degraded_count
  std::ostream* decision_log = nullptr;
  std::optional<double> horizon_s;
};

/// One deterministic run. Throws ConfigError before any event for an invalid config.
MetricsReport run_simulation(const ScenarioConfig& config, std::uint64_t seed,
                             const RunOptions& options = {});

/// Key-value lines for a report.
KeyValues report_values(const MetricsReport& report);
/// Header and row for a CSV rendering of the headline metrics.
std::vector<std::string> report_csv_header();
std::vector<std::string> report_csv_row(const MetricsReport& report);

}  // namespace femtonet
