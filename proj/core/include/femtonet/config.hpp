#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "femtonet/admission.hpp"
#include "femtonet/neighbor_list.hpp"
#include "femtonet/radio.hpp"
#include "femtonet/report.hpp"
#include "femtonet/signaling.hpp"
#include "femtonet/topology.hpp"
#include "femtonet/traffic.hpp"

namespace femtonet {

inline constexpr int kSchemaVersion = 1;

struct NeighborListSection {
  ListThresholds thresholds;
  // Radius around the MS inside which FAPs are measured at all.
  double scan_range_m = 150.0;
};

struct TrafficSection {
  double mu = 1.0 / 120.0;
  double eta_f = 1.0 / 360.0;
  double eta_m = 1.0 / 240.0;
  // Total originating rate over the macrocell, split by density_ratio.
  double total_arrival_rate = 0.75;
  double density_ratio = 20.0;
  double alpha = 0.5;
  // Unset: derived from the cac section.
  std::optional<int> N_ch;
  std::optional<int> S_ch;
  double tol = 1e-9;
  int max_iter = 1000;
  double damping = 1.0;
};

enum class MacroModel { Bandwidth, Channelized };

struct CacSection {
  Kbps capacity_kbps = 6000;
  double gamma1_db = 10.0;
  double gamma2_db = 12.0;
  Kbps non_adaptive_kbps = 64;
  Kbps adaptive_request_kbps = 56;
  Kbps adaptive_min_kbps = 28;
  double adaptive_share = 0.5;
  bool restore_qos = false;
  // Channelized: N_ch + S_ch unit channels, the top S_ch for handovers only.
  MacroModel macro_model = MacroModel::Bandwidth;
};

struct SignalingSection {
  double air_delay_ms = 1.0;
  double backhaul_delay_ms = 5.0;
  double self_delay_ms = 0.0;
};

struct SimSection {
  double horizon_s = 1e5;
  double warmup_fraction = 0.1;
  std::uint64_t seed = 1;
  double m2m_mirror_delay_s = 1000.0;
  int check_interval = 1000;
  // A femto-to-femto move lands in one of this many nearest FAPs.
  int f2f_neighbor_pool = 4;
  // Measure alpha during the run and report the solver at that alpha too.
  bool alpha_feedback = false;
};

struct ScenarioConfig {
  int schema_version = kSchemaVersion;
  ScenarioParams topology;
  RadioParams radio;
  NeighborListSection neighbor_list;
  TrafficSection traffic;
  CacSection cac;
  SignalingSection signaling;
  SimSection sim;
};

/// Parses YAML text; an empty document yields the defaults. Every problem
/// found (syntax, unknown key, bad value, cross-field) is reported together
/// in one ConfigError.
ScenarioConfig parse_config(const std::string& text,
                            const std::vector<std::string>& overrides = {});
ScenarioConfig load_config(const std::string& path,
                           const std::vector<std::string>& overrides = {});

/// Applies `section.key=value`. Throws ConfigError for unknown keys or bad values.
void apply_override(ScenarioConfig& config, const std::string& assignment);
void set_value(ScenarioConfig& config, const std::string& key, const std::string& value);
std::string get_value(const ScenarioConfig& config, const std::string& key);
std::vector<std::string> config_keys();

/// Returns every range and cross-field violation; empty when valid.
std::vector<std::string> validate(const ScenarioConfig& config);
/// Throws ConfigError when validate() is non-empty.
void require_valid(const ScenarioConfig& config);

KeyValues effective_values(const ScenarioConfig& config);
std::string to_yaml(const ScenarioConfig& config);

int resolved_n_ch(const ScenarioConfig& config);
int resolved_s_ch(const ScenarioConfig& config);
TrafficParams traffic_params(const ScenarioConfig& config);
CacThresholds cac_thresholds(const ScenarioConfig& config);
SignalingDelays signaling_delays(const ScenarioConfig& config);
TrafficClass non_adaptive_class(const ScenarioConfig& config);
TrafficClass adaptive_class(const ScenarioConfig& config);
SolverOptions solver_options(const ScenarioConfig& config);

}  // namespace femtonet
