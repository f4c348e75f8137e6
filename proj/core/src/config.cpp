#include "femtonet/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "femtonet/error.hpp"

namespace femtonet {

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error("invalid configuration: " + join(problems)),
      problems_(std::move(problems)) {}

namespace {

struct BadValue {
  std::string message;
};

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double parse_double(const std::string& text) {
  const auto t = trim(text);
  double v = 0.0;
  const auto* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) throw BadValue{"expected a number"};
  return v;
}

template <typename Int>
Int parse_int(const std::string& text) {
  const auto t = trim(text);
  Int v = 0;
  const auto* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (ec != std::errc() || ptr != end) throw BadValue{"expected an integer"};
  return v;
}

bool parse_bool(const std::string& text) {
  auto t = trim(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "true" || t == "yes" || t == "on" || t == "1") return true;
  if (t == "false" || t == "no" || t == "off" || t == "0") return false;
  throw BadValue{"expected true or false"};
}

struct Field {
  std::string key;
  std::function<void(ScenarioConfig&, const std::string&)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

template <typename Member>
Field real(std::string key, Member member) {
  return {std::move(key),
          [member](ScenarioConfig& c, const std::string& v) { member(c) = parse_double(v); },
          [member](const ScenarioConfig& c) {
            return format_number(member(c));
          }};
}

template <typename Int, typename Member>
Field integer(std::string key, Member member) {
  return {std::move(key),
          [member](ScenarioConfig& c, const std::string& v) { member(c) = parse_int<Int>(v); },
          [member](const ScenarioConfig& c) {
            return std::to_string(member(c));
          }};
}

template <typename Member>
Field boolean(std::string key, Member member) {
  return {std::move(key),
          [member](ScenarioConfig& c, const std::string& v) { member(c) = parse_bool(v); },
          [member](const ScenarioConfig& c) {
            return std::string(member(c) ? "true" : "false");
          }};
}

template <typename Member>
Field optional_int(std::string key, Member member) {
  return {std::move(key),
          [member](ScenarioConfig& c, const std::string& v) {
            if (trim(v) == "auto") {
              member(c).reset();
            } else {
              member(c) = parse_int<int>(v);
            }
          },
          [member](const ScenarioConfig& c) {
            const auto& o = member(c);
            return o ? std::to_string(*o) : std::string("auto");
          }};
}

#define FIELD(expr) [](auto& c) -> auto& { return c.expr; }

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      integer<int>("topology.n", FIELD(topology.n)),
      real("topology.macro_radius_m", FIELD(topology.macro_radius_m)),
      real("topology.femto_radius_m", FIELD(topology.femto_radius_m)),
      real("topology.macro_height_m", FIELD(topology.macro_height_m)),
      real("topology.macro_tx_power_w", FIELD(topology.macro_tx_power_w)),
      real("topology.fap_height_m", FIELD(topology.fap_height_m)),
      real("topology.fap_tx_power_mw", FIELD(topology.fap_tx_power_mw)),
      integer<int>("topology.fap_capacity", FIELD(topology.fap_capacity)),
      integer<int>("topology.channel_pool_size", FIELD(topology.channel_pool_size)),
      real("topology.coordination_range_m", FIELD(topology.coordination_range_m)),
      real("topology.closed_access_fraction", FIELD(topology.closed_access_fraction)),
      integer<int>("topology.household_size", FIELD(topology.household_size)),
      real("topology.wall_density", FIELD(topology.wall_density)),
      real("topology.wall_length_m", FIELD(topology.wall_length_m)),
      real("topology.wall_attenuation_db", FIELD(topology.wall_attenuation_db)),

      real("radio.femto_freq_mhz", FIELD(radio.femto_freq_mhz)),
      real("radio.macro_freq_mhz", FIELD(radio.macro_freq_mhz)),
      real("radio.indoor_loss_exponent", FIELD(radio.indoor_loss_exponent)),
      real("radio.floor_loss_db", FIELD(radio.floor_loss_db)),
      real("radio.ms_height_m", FIELD(radio.ms_height_m)),
      real("radio.shadow_sigma_db", FIELD(radio.shadow_sigma_db)),
      real("radio.penetration_db", FIELD(radio.penetration_db)),
      real("radio.noise_floor_dbm", FIELD(radio.noise_floor_dbm)),
      real("radio.hata_hb_coefficient", FIELD(radio.hata_hb_coefficient)),
      real("radio.min_distance_m", FIELD(radio.min_distance_m)),
      real("radio.interference_range_m", FIELD(radio.interference_range_m)),

      real("neighbor_list.detect_dbm", FIELD(neighbor_list.thresholds.detect_dbm)),
      real("neighbor_list.strong_dbm", FIELD(neighbor_list.thresholds.strong_dbm)),
      real("neighbor_list.d_max_m", FIELD(neighbor_list.thresholds.d_max_m)),
      boolean("neighbor_list.hidden_excludes_cochannel",
              FIELD(neighbor_list.thresholds.hidden_excludes_cochannel)),
      real("neighbor_list.scan_range_m", FIELD(neighbor_list.scan_range_m)),

      real("traffic.mu", FIELD(traffic.mu)),
      real("traffic.eta_f", FIELD(traffic.eta_f)),
      real("traffic.eta_m", FIELD(traffic.eta_m)),
      real("traffic.total_arrival_rate", FIELD(traffic.total_arrival_rate)),
      real("traffic.density_ratio", FIELD(traffic.density_ratio)),
      real("traffic.alpha", FIELD(traffic.alpha)),
      optional_int("traffic.N_ch", FIELD(traffic.N_ch)),
      optional_int("traffic.S_ch", FIELD(traffic.S_ch)),
      real("traffic.tol", FIELD(traffic.tol)),
      integer<int>("traffic.max_iter", FIELD(traffic.max_iter)),
      real("traffic.damping", FIELD(traffic.damping)),

      integer<Kbps>("cac.capacity_kbps", FIELD(cac.capacity_kbps)),
      real("cac.gamma1_db", FIELD(cac.gamma1_db)),
      real("cac.gamma2_db", FIELD(cac.gamma2_db)),
      integer<Kbps>("cac.non_adaptive_kbps", FIELD(cac.non_adaptive_kbps)),
      integer<Kbps>("cac.adaptive_request_kbps", FIELD(cac.adaptive_request_kbps)),
      integer<Kbps>("cac.adaptive_min_kbps", FIELD(cac.adaptive_min_kbps)),
      real("cac.adaptive_share", FIELD(cac.adaptive_share)),
      boolean("cac.restore_qos", FIELD(cac.restore_qos)),
      {"cac.macro_model",
       [](ScenarioConfig& c, const std::string& v) {
         const auto t = trim(v);
         if (t == "bandwidth") {
           c.cac.macro_model = MacroModel::Bandwidth;
         } else if (t == "channelized") {
           c.cac.macro_model = MacroModel::Channelized;
         } else {
           throw BadValue{"expected bandwidth or channelized"};
         }
       },
       [](const ScenarioConfig& c) {
         return std::string(c.cac.macro_model == MacroModel::Bandwidth ? "bandwidth"
                                                                       : "channelized");
       }},

      real("signaling.air_delay_ms", FIELD(signaling.air_delay_ms)),
      real("signaling.backhaul_delay_ms", FIELD(signaling.backhaul_delay_ms)),
      real("signaling.self_delay_ms", FIELD(signaling.self_delay_ms)),

      real("sim.horizon_s", FIELD(sim.horizon_s)),
      real("sim.warmup_fraction", FIELD(sim.warmup_fraction)),
      integer<std::uint64_t>("sim.seed", FIELD(sim.seed)),
      real("sim.m2m_mirror_delay_s", FIELD(sim.m2m_mirror_delay_s)),
      integer<int>("sim.check_interval", FIELD(sim.check_interval)),
      integer<int>("sim.f2f_neighbor_pool", FIELD(sim.f2f_neighbor_pool)),
      boolean("sim.alpha_feedback", FIELD(sim.alpha_feedback)),
  };
  return table;
}

#undef FIELD

const Field* find_field(const std::string& key) {
  for (const auto& f : fields()) {
    if (f.key == key) return &f;
  }
  return nullptr;
}

bool known_section(const std::string& name) {
  static const char* sections[] = {"topology", "radio",     "neighbor_list", "traffic",
                                   "cac",      "signaling", "sim"};
  return std::find(std::begin(sections), std::end(sections), name) != std::end(sections);
}

// Returns false and records a problem instead of throwing.
bool try_set(ScenarioConfig& config, const std::string& key, const std::string& value,
             std::vector<std::string>& problems) {
  const auto* f = find_field(key);
  if (!f) {
    problems.push_back("unknown key '" + key + "'");
    return false;
  }
  try {
    f->set(config, value);
  } catch (const BadValue& e) {
    problems.push_back(key + ": " + e.message + ", got '" + value + "'");
    return false;
  }
  return true;
}

void read_yaml(ScenarioConfig& config, const YAML::Node& root, std::vector<std::string>& problems) {
  if (!root || root.IsNull()) return;
  if (!root.IsMap()) {
    problems.push_back("top level must be a mapping of sections");
    return;
  }
  for (const auto& entry : root) {
    const auto section = entry.first.as<std::string>();
    const auto& body = entry.second;
    if (section == "schema_version") {
      if (!body.IsScalar()) {
        problems.push_back("schema_version must be an integer");
        continue;
      }
      try {
        config.schema_version = parse_int<int>(body.Scalar());
      } catch (const BadValue&) {
        problems.push_back("schema_version must be an integer");
        continue;
      }
      if (config.schema_version != kSchemaVersion) {
        problems.push_back("unsupported schema_version " + std::to_string(config.schema_version) +
                           " (expected " + std::to_string(kSchemaVersion) + ")");
      }
      continue;
    }
    if (!known_section(section)) {
      problems.push_back("unknown section '" + section + "'");
      continue;
    }
    if (body.IsNull()) continue;
    if (!body.IsMap()) {
      problems.push_back("section '" + section + "' must be a mapping");
      continue;
    }
    for (const auto& kv : body) {
      const auto key = section + "." + kv.first.as<std::string>();
      if (!kv.second.IsScalar()) {
        problems.push_back(key + ": expected a scalar value");
        continue;
      }
      try_set(config, key, kv.second.Scalar(), problems);
    }
  }
}

void apply_overrides(ScenarioConfig& config, const std::vector<std::string>& overrides,
                     std::vector<std::string>& problems) {
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) {
      problems.push_back("override '" + o + "' is not of the form section.key=value");
      continue;
    }
    try_set(config, trim(o.substr(0, eq)), o.substr(eq + 1), problems);
  }
}

}  // namespace

ScenarioConfig parse_config(const std::string& text, const std::vector<std::string>& overrides) {
  ScenarioConfig config;
  std::vector<std::string> problems;
  try {
    read_yaml(config, YAML::Load(text), problems);
  } catch (const YAML::Exception& e) {
    problems.push_back(std::string("parse error: ") + e.what());
  }
  apply_overrides(config, overrides, problems);
  // Range checks run on whatever did parse, so one pass reports everything.
  for (auto& p : validate(config)) problems.push_back(std::move(p));
  if (!problems.empty()) throw ConfigError(problems);
  return config;
}

ScenarioConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), overrides);
}

void apply_override(ScenarioConfig& config, const std::string& assignment) {
  std::vector<std::string> problems;
  apply_overrides(config, {assignment}, problems);
  if (!problems.empty()) throw ConfigError(problems);
}

void set_value(ScenarioConfig& config, const std::string& key, const std::string& value) {
  std::vector<std::string> problems;
  try_set(config, key, value, problems);
  if (!problems.empty()) throw ConfigError(problems);
}

std::string get_value(const ScenarioConfig& config, const std::string& key) {
  const auto* f = find_field(key);
  if (!f) throw ConfigError("unknown key '" + key + "'");
  return f->get(config);
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& f : fields()) keys.push_back(f.key);
  return keys;
}

std::vector<std::string> validate(const ScenarioConfig& c) {
  std::vector<std::string> p;
  auto need = [&p](bool ok, const std::string& message) {
    if (!ok) p.push_back(message);
  };
  const auto& t = c.topology;
  need(t.n >= 0, "topology.n must be >= 0");
  need(t.macro_radius_m > 0, "topology.macro_radius_m must be positive");
  need(t.femto_radius_m > 0, "topology.femto_radius_m must be positive");
  need(t.femto_radius_m < t.macro_radius_m,
       "topology.femto_radius_m must be smaller than topology.macro_radius_m");
  need(femto_area_fraction(t.n, t.femto_radius_m, t.macro_radius_m) <= 1.0,
       "topology.n * (topology.femto_radius_m / topology.macro_radius_m)^2 must not exceed 1");
  need(t.fap_capacity >= 1, "topology.fap_capacity must be >= 1");
  need(t.channel_pool_size >= 1, "topology.channel_pool_size must be >= 1");
  need(t.coordination_range_m >= 0, "topology.coordination_range_m must be >= 0");
  need(t.closed_access_fraction >= 0 && t.closed_access_fraction <= 1,
       "topology.closed_access_fraction must lie in [0, 1]");
  need(t.household_size >= 1, "topology.household_size must be >= 1");
  need(t.wall_density >= 0, "topology.wall_density must be >= 0");
  need(t.wall_length_m >= 0, "topology.wall_length_m must be >= 0");
  need(t.wall_attenuation_db >= 0, "topology.wall_attenuation_db must be >= 0");
  need(t.macro_height_m > 0 && t.fap_height_m > 0, "antenna heights must be positive");
  need(t.macro_tx_power_w > 0 && t.fap_tx_power_mw > 0, "transmit powers must be positive");

  const auto& r = c.radio;
  need(r.femto_freq_mhz > 0 && r.macro_freq_mhz > 0, "carrier frequencies must be positive");
  need(r.ms_height_m > 0, "radio.ms_height_m must be positive");
  need(r.shadow_sigma_db >= 0, "radio.shadow_sigma_db must be >= 0");
  need(r.min_distance_m > 0, "radio.min_distance_m must be positive");
  need(r.interference_range_m >= 0, "radio.interference_range_m must be >= 0");

  const auto& nl = c.neighbor_list;
  need(nl.thresholds.strong_dbm > nl.thresholds.detect_dbm,
       "neighbor_list.strong_dbm must exceed neighbor_list.detect_dbm");
  need(nl.thresholds.d_max_m >= 0, "neighbor_list.d_max_m must be >= 0");
  need(nl.scan_range_m > 0, "neighbor_list.scan_range_m must be positive");
  if (t.femto_radius_m > 0 && r.femto_freq_mhz > 0) {
    const double edge = rssi(mw_to_dbm(t.fap_tx_power_mw),
                             femto_path_loss(r.femto_freq_mhz, t.femto_radius_m, 0, 0.0,
                                             r.indoor_loss_exponent, r.floor_loss_db));
    need(edge >= nl.thresholds.detect_dbm,
         "unobstructed RSSI at topology.femto_radius_m is below neighbor_list.detect_dbm");
  }

  const auto& tr = c.traffic;
  need(tr.mu > 0, "traffic.mu must be positive");
  need(tr.eta_f >= 0 && tr.eta_m >= 0, "traffic.eta_f and traffic.eta_m must be >= 0");
  need(tr.total_arrival_rate >= 0, "traffic.total_arrival_rate must be >= 0");
  need(tr.density_ratio > 0, "traffic.density_ratio must be positive");
  need(tr.alpha >= 0 && tr.alpha <= 1, "traffic.alpha must lie in [0, 1]");
  need(!tr.N_ch || *tr.N_ch >= 1, "traffic.N_ch must be >= 1");
  need(!tr.S_ch || *tr.S_ch >= 0, "traffic.S_ch must be >= 0");
  need(tr.tol > 0, "traffic.tol must be positive");
  need(tr.max_iter >= 1, "traffic.max_iter must be >= 1");
  need(tr.damping > 0 && tr.damping <= 1, "traffic.damping must lie in (0, 1]");

  const auto& a = c.cac;
  need(a.capacity_kbps > 0, "cac.capacity_kbps must be positive");
  need(a.gamma2_db > a.gamma1_db, "cac.gamma2_db must exceed cac.gamma1_db");
  need(a.non_adaptive_kbps > 0, "cac.non_adaptive_kbps must be positive");
  need(a.adaptive_min_kbps > 0, "cac.adaptive_min_kbps must be positive");
  need(a.adaptive_min_kbps <= a.adaptive_request_kbps,
       "cac.adaptive_min_kbps must not exceed cac.adaptive_request_kbps");
  need(a.adaptive_share >= 0 && a.adaptive_share <= 1, "cac.adaptive_share must lie in [0, 1]");
  need(a.non_adaptive_kbps <= a.capacity_kbps && a.adaptive_request_kbps <= a.capacity_kbps,
       "requested bandwidths must fit in cac.capacity_kbps");

  const auto& s = c.signaling;
  need(s.air_delay_ms >= 0 && s.backhaul_delay_ms >= 0 && s.self_delay_ms >= 0,
       "signaling delays must be >= 0");

  const auto& sim = c.sim;
  need(sim.horizon_s > 0, "sim.horizon_s must be positive");
  need(sim.warmup_fraction >= 0 && sim.warmup_fraction < 1,
       "sim.warmup_fraction must lie in [0, 1)");
  need(sim.m2m_mirror_delay_s >= 0, "sim.m2m_mirror_delay_s must be >= 0");
  need(sim.check_interval >= 1, "sim.check_interval must be >= 1");
  need(sim.f2f_neighbor_pool >= 1, "sim.f2f_neighbor_pool must be >= 1");
  if (p.empty()) need(resolved_n_ch(c) >= 1, "derived N_ch is zero; set traffic.N_ch");
  return p;
}

void require_valid(const ScenarioConfig& config) {
  auto problems = validate(config);
  if (!problems.empty()) throw ConfigError(problems);
}

KeyValues effective_values(const ScenarioConfig& config) {
  KeyValues out;
  out.emplace_back("schema_version", std::to_string(config.schema_version));
  for (const auto& f : fields()) out.emplace_back(f.key, f.get(config));
  return out;
}

std::string to_yaml(const ScenarioConfig& config) {
  std::ostringstream out;
  out << "schema_version: " << config.schema_version << '\n';
  std::string current;
  for (const auto& f : fields()) {
    const auto dot = f.key.find('.');
    const auto section = f.key.substr(0, dot);
    if (section != current) {
      out << section << ":\n";
      current = section;
    }
    out << "  " << f.key.substr(dot + 1) << ": " << f.get(config) << '\n';
  }
  return out.str();
}

namespace {

double mean_request(const CacSection& a) {
  return (1.0 - a.adaptive_share) * static_cast<double>(a.non_adaptive_kbps) +
         a.adaptive_share * static_cast<double>(a.adaptive_request_kbps);
}

}  // namespace

int resolved_n_ch(const ScenarioConfig& config) {
  if (config.traffic.N_ch) return *config.traffic.N_ch;
  return static_cast<int>(std::floor(static_cast<double>(config.cac.capacity_kbps) /
                                     mean_request(config.cac)));
}

int resolved_s_ch(const ScenarioConfig& config) {
  if (config.traffic.S_ch) return *config.traffic.S_ch;
  const auto& a = config.cac;
  const double slack = static_cast<double>(a.adaptive_request_kbps - a.adaptive_min_kbps);
  // The small epsilon keeps exact products such as 23.0 from flooring to 22.
  return static_cast<int>(
      std::floor(resolved_n_ch(config) * a.adaptive_share * slack / mean_request(a) + 1e-9));
}

TrafficParams traffic_params(const ScenarioConfig& config) {
  const auto& t = config.topology;
  const auto& tr = config.traffic;
  TrafficParams p;
  p.n = t.n;
  p.r_f = t.femto_radius_m;
  p.r_m = t.macro_radius_m;
  p.mu = tr.mu;
  p.eta_f = tr.eta_f;
  p.eta_m = tr.eta_m;
  const auto split =
      split_arrivals(tr.total_arrival_rate, t.n, t.femto_radius_m, t.macro_radius_m,
                     tr.density_ratio);
  p.lambda_f_o = split.femto;
  p.lambda_m_o = split.macro;
  p.K = t.fap_capacity;
  p.N_ch = resolved_n_ch(config);
  p.S_ch = resolved_s_ch(config);
  p.alpha = tr.alpha;
  return p;
}

CacThresholds cac_thresholds(const ScenarioConfig& config) {
  return {config.cac.gamma1_db, config.cac.gamma2_db};
}

SignalingDelays signaling_delays(const ScenarioConfig& config) {
  return {config.signaling.air_delay_ms / 1000.0, config.signaling.backhaul_delay_ms / 1000.0,
          config.signaling.self_delay_ms / 1000.0};
}

TrafficClass non_adaptive_class(const ScenarioConfig& config) {
  return {"non_adaptive", false, config.cac.non_adaptive_kbps, config.cac.non_adaptive_kbps};
}

TrafficClass adaptive_class(const ScenarioConfig& config) {
  return {"adaptive", true, config.cac.adaptive_request_kbps, config.cac.adaptive_min_kbps};
}

SolverOptions solver_options(const ScenarioConfig& config) {
  return {config.traffic.tol, config.traffic.max_iter, config.traffic.damping};
}

}  // namespace femtonet
