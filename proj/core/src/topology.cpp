#include "femtonet/topology.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "femtonet/error.hpp"

namespace femtonet {

namespace {

constexpr std::uint64_t kPositionStream = 1;
constexpr std::uint64_t kAccessStream = 2;
constexpr std::uint64_t kWallStream = 3;

}  // namespace

Topology::Topology(MacroCell macro, std::vector<FapDescriptor> faps, std::vector<Wall> walls,
                   double coordination_range_m, std::uint64_t seed)
    : macro_(macro),
      faps_(std::move(faps)),
      walls_(std::move(walls)),
      coordination_range_(coordination_range_m),
      seed_(seed) {
  build_indices();
}

std::int64_t Topology::cell_key(std::int64_t cx, std::int64_t cy) const {
  return (cx << 32) ^ (cy & 0xffffffffLL);
}

void Topology::build_indices() {
  fap_index_.clear();
  fap_grid_.clear();
  wall_grid_.clear();
  max_fap_radius_ = 0.0;
  for (std::size_t i = 0; i < faps_.size(); ++i) {
    const auto& f = faps_[i];
    if (!fap_index_.emplace(f.id.value, i).second) {
      throw ConfigError("duplicate FAP id " + std::to_string(f.id.value));
    }
    max_fap_radius_ = std::max(max_fap_radius_, f.radius_m);
    const auto cx = static_cast<std::int64_t>(std::floor(f.position.x / grid_cell_));
    const auto cy = static_cast<std::int64_t>(std::floor(f.position.y / grid_cell_));
    fap_grid_[cell_key(cx, cy)].push_back(i);
  }
  for (std::size_t i = 0; i < walls_.size(); ++i) {
    const auto& s = walls_[i].segment;
    const auto x0 = static_cast<std::int64_t>(std::floor(std::min(s.a.x, s.b.x) / wall_cell_));
    const auto x1 = static_cast<std::int64_t>(std::floor(std::max(s.a.x, s.b.x) / wall_cell_));
    const auto y0 = static_cast<std::int64_t>(std::floor(std::min(s.a.y, s.b.y) / wall_cell_));
    const auto y1 = static_cast<std::int64_t>(std::floor(std::max(s.a.y, s.b.y) / wall_cell_));
    for (auto cx = x0; cx <= x1; ++cx) {
      for (auto cy = y0; cy <= y1; ++cy) wall_grid_[cell_key(cx, cy)].push_back(i);
    }
  }
}

bool Topology::contains(FapId id) const { return fap_index_.contains(id.value); }

const FapDescriptor& Topology::fap(FapId id) const {
  const auto it = fap_index_.find(id.value);
  if (it == fap_index_.end()) throw LookupError("unknown FAP id " + std::to_string(id.value));
  return faps_[it->second];
}

std::vector<FapId> Topology::faps_within(Point center, double radius) const {
  std::vector<FapId> out;
  if (faps_.empty() || radius < 0.0) return out;
  const auto x0 = static_cast<std::int64_t>(std::floor((center.x - radius) / grid_cell_));
  const auto x1 = static_cast<std::int64_t>(std::floor((center.x + radius) / grid_cell_));
  const auto y0 = static_cast<std::int64_t>(std::floor((center.y - radius) / grid_cell_));
  const auto y1 = static_cast<std::int64_t>(std::floor((center.y + radius) / grid_cell_));
  for (auto cx = x0; cx <= x1; ++cx) {
    for (auto cy = y0; cy <= y1; ++cy) {
      const auto it = fap_grid_.find(cell_key(cx, cy));
      if (it == fap_grid_.end()) continue;
      for (const auto i : it->second) {
        if (distance(faps_[i].position, center) <= radius) out.push_back(faps_[i].id);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Topology::in_femto_coverage(Point p) const {
  for (const auto id : faps_within(p, max_fap_radius_)) {
    const auto& f = fap(id);
    if (distance(f.position, p) <= f.radius_m) return true;
  }
  return false;
}

// Walls registered in the grid cells the path passes through, column by column.
std::vector<std::size_t> Topology::walls_near(Point from, Point to) const {
  std::vector<std::size_t> out;
  if (walls_.empty()) return out;
  const double c = wall_cell_;
  if (from.x > to.x) std::swap(from, to);
  const auto x0 = static_cast<std::int64_t>(std::floor(from.x / c));
  const auto x1 = static_cast<std::int64_t>(std::floor(to.x / c));
  const double dx = to.x - from.x;
  const double slope = dx > 0.0 ? (to.y - from.y) / dx : 0.0;
  constexpr double pad = 1e-7;
  for (auto cx = x0; cx <= x1; ++cx) {
    double ya = from.y;
    double yb = to.y;
    if (dx > 0.0) {
      const double xa = std::max(from.x, static_cast<double>(cx) * c);
      const double xb = std::min(to.x, static_cast<double>(cx + 1) * c);
      ya = from.y + slope * (xa - from.x);
      yb = from.y + slope * (xb - from.x);
    }
    const auto y0 = static_cast<std::int64_t>(std::floor((std::min(ya, yb) - pad) / c));
    const auto y1 = static_cast<std::int64_t>(std::floor((std::max(ya, yb) + pad) / c));
    for (auto cy = y0; cy <= y1; ++cy) {
      const auto it = wall_grid_.find(cell_key(cx, cy));
      if (it != wall_grid_.end()) out.insert(out.end(), it->second.begin(), it->second.end());
    }
  }
  return out;
}

std::vector<std::size_t> Topology::walls_crossed(Point from, Point to) const {
  std::vector<std::size_t> hits;
  const Segment path{from, to};
  for (const auto i : walls_near(from, to)) {
    if (segments_intersect(path, walls_[i].segment)) hits.push_back(i);
  }
  std::sort(hits.begin(), hits.end());
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  return hits;
}

int Topology::wall_crossings(Point from, Point to) const {
  return static_cast<int>(walls_crossed(from, to).size());
}

double Topology::wall_loss_db(Point from, Point to) const {
  double loss = 0.0;
  for (const auto i : walls_crossed(from, to)) loss += walls_[i].attenuation_db;
  return loss;
}

bool operator==(const Topology& a, const Topology& b) {
  if (a.seed_ != b.seed_ || a.coordination_range_ != b.coordination_range_) return false;
  if (a.macro_.position != b.macro_.position || a.macro_.height_m != b.macro_.height_m ||
      a.macro_.tx_power_w != b.macro_.tx_power_w || a.macro_.radius_m != b.macro_.radius_m) {
    return false;
  }
  if (a.faps_.size() != b.faps_.size() || a.walls_.size() != b.walls_.size()) return false;
  for (std::size_t i = 0; i < a.faps_.size(); ++i) {
    const auto& f = a.faps_[i];
    const auto& g = b.faps_[i];
    if (f.id != g.id || f.position != g.position || f.height_m != g.height_m ||
        f.tx_power_mw != g.tx_power_mw || f.radius_m != g.radius_m ||
        f.frequency_channel != g.frequency_channel || f.access_mode != g.access_mode ||
        f.authorized_users != g.authorized_users || f.capacity != g.capacity) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.walls_.size(); ++i) {
    const auto& w = a.walls_[i];
    const auto& v = b.walls_[i];
    if (w.segment.a != v.segment.a || w.segment.b != v.segment.b ||
        w.attenuation_db != v.attenuation_db) {
      return false;
    }
  }
  return true;
}

Topology generate_topology(const ScenarioParams& params, std::uint64_t seed) {
  std::vector<std::string> problems;
  if (params.n < 0) problems.push_back("topology.n must be >= 0");
  if (!(params.femto_radius_m > 0.0)) problems.push_back("topology.femto_radius_m must be > 0");
  if (!(params.femto_radius_m < params.macro_radius_m)) {
    problems.push_back("topology.femto_radius_m must be < topology.macro_radius_m");
  }
  if (params.channel_pool_size < 1) problems.push_back("topology.channel_pool_size must be >= 1");
  if (params.household_size < 1) problems.push_back("topology.household_size must be >= 1");
  if (params.wall_density < 0.0) problems.push_back("topology.wall_density must be >= 0");
  if (params.wall_attenuation_db < 0.0) {
    problems.push_back("topology.wall_attenuation_db must be >= 0");
  }
  if (!problems.empty()) throw ConfigError(problems);

  MacroCell macro;
  macro.position = {0.0, 0.0};
  macro.height_m = params.macro_height_m;
  macro.tx_power_w = params.macro_tx_power_w;
  macro.radius_m = params.macro_radius_m;

  std::mt19937_64 pos_rng(derive_seed(seed, kPositionStream));
  std::mt19937_64 access_rng(derive_seed(seed, kAccessStream));
  std::mt19937_64 wall_rng(derive_seed(seed, kWallStream));
  std::bernoulli_distribution closed(params.closed_access_fraction);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<FapDescriptor> faps;
  faps.reserve(static_cast<std::size_t>(params.n));
  for (int i = 0; i < params.n; ++i) {
    FapDescriptor f;
    f.id = FapId{static_cast<std::uint32_t>(i)};
    f.position = uniform_in_disk(pos_rng, macro.position, macro.radius_m);
    f.height_m = params.fap_height_m;
    f.tx_power_mw = params.fap_tx_power_mw;
    f.radius_m = params.femto_radius_m;
    f.capacity = params.fap_capacity;
    f.access_mode = closed(access_rng) ? AccessMode::Closed : AccessMode::Open;
    const auto base = static_cast<UserId>(i * params.household_size);
    for (int k = 0; k < params.household_size; ++k) {
      f.authorized_users.insert(base + static_cast<UserId>(k));
    }
    faps.push_back(std::move(f));
  }

  std::vector<Wall> walls;
  if (params.wall_density > 0.0) {
    std::poisson_distribution<int> wall_count(params.wall_density);
    for (const auto& f : faps) {
      const int count = wall_count(wall_rng);
      for (int k = 0; k < count; ++k) {
        // Exterior walls of the FAP's home: tangent to a circle just outside
        // the coverage disk, so they shield the home from its neighbours.
        const double rho = params.femto_radius_m * (1.0 + 0.5 * unit(wall_rng));
        const double bearing = 2.0 * std::numbers::pi * unit(wall_rng);
        const Point mid{f.position.x + rho * std::cos(bearing),
                        f.position.y + rho * std::sin(bearing)};
        const double h = 0.5 * params.wall_length_m;
        const Point d{-h * std::sin(bearing), h * std::cos(bearing)};
        walls.push_back(
            Wall{Segment{{mid.x - d.x, mid.y - d.y}, {mid.x + d.x, mid.y + d.y}},
                 params.wall_attenuation_db});
      }
    }
  }

  Topology raw(macro, std::move(faps), std::move(walls), params.coordination_range_m, seed);
  return allocate_frequencies(raw, params.channel_pool_size);
}

Topology allocate_frequencies(const Topology& topology, int channel_pool_size) {
  if (channel_pool_size < 1) throw ConfigError("channel_pool_size must be >= 1");
  Topology out = topology;
  out.warnings_.clear();
  auto& faps = out.faps_;
  std::vector<FapId> order;
  order.reserve(faps.size());
  for (const auto& f : faps) order.push_back(f.id);
  std::sort(order.begin(), order.end());

  std::set<FapId> assigned;
  for (const auto id : order) {
    auto& f = faps[out.fap_index_.at(id.value)];
    const auto pool = static_cast<std::size_t>(channel_pool_size);
    std::vector<int> conflicts(pool, 0);
    // Among non-conflicting channels prefer the one reused farthest away.
    const double reuse_radius = 10.0 * out.max_fap_radius_;
    std::vector<double> nearest(pool, std::numeric_limits<double>::infinity());
    for (const auto other : out.faps_within(f.position, reuse_radius)) {
      if (other == id || !assigned.contains(other)) continue;
      const auto& g = out.fap(other);
      const auto ch = static_cast<std::size_t>(g.frequency_channel);
      const double d = distance(f.position, g.position);
      if (d < f.radius_m + g.radius_m) ++conflicts[ch];
      nearest[ch] = std::min(nearest[ch], d);
    }
    std::size_t pick = 0;
    for (std::size_t ch = 1; ch < pool; ++ch) {
      if (conflicts[ch] != conflicts[pick]) {
        if (conflicts[ch] < conflicts[pick]) pick = ch;
      } else if (nearest[ch] > nearest[pick]) {
        pick = ch;
      }
    }
    const auto best = conflicts.begin() + static_cast<std::ptrdiff_t>(pick);
    f.frequency_channel = static_cast<int>(pick);
    if (*best > 0) {
      out.warnings_.push_back("channel pool exhausted at FAP " + std::to_string(id.value) +
                              ": shares channel " + std::to_string(f.frequency_channel) +
                              " with " + std::to_string(*best) + " overlapping FAP(s)");
    }
    assigned.insert(id);
  }
  return out;
}

FapSet coordination_set(const Topology& topology, FapId fap) {
  const auto& f = topology.fap(fap);
  FapSet out;
  for (const auto id : topology.faps_within(f.position, topology.coordination_range())) {
    if (id != fap) out.insert(id);
  }
  return out;
}

FapSet known_locations(const Topology& topology, FapId serving) {
  FapSet out = coordination_set(topology, serving);
  FapSet first_hop = out;
  for (const auto member : first_hop) {
    const auto second = coordination_set(topology, member);
    out.insert(second.begin(), second.end());
  }
  out.erase(serving);
  return out;
}

using nlohmann::json;

std::string topology_to_json(const Topology& topology) {
  json j;
  const auto& m = topology.macro();
  j["macro"] = {{"x", m.position.x},
                {"y", m.position.y},
                {"height_m", m.height_m},
                {"tx_power_w", m.tx_power_w},
                {"radius_m", m.radius_m}};
  j["faps"] = json::array();
  for (const auto& f : topology.faps()) {
    j["faps"].push_back({{"id", f.id.value},
                         {"x", f.position.x},
                         {"y", f.position.y},
                         {"height_m", f.height_m},
                         {"tx_power_mw", f.tx_power_mw},
                         {"radius_m", f.radius_m},
                         {"channel", f.frequency_channel},
                         {"access", f.access_mode == AccessMode::Open ? "open" : "closed"},
                         {"authorized_users", f.authorized_users},
                         {"capacity", f.capacity}});
  }
  j["walls"] = json::array();
  for (const auto& w : topology.walls()) {
    j["walls"].push_back({{"x1", w.segment.a.x},
                          {"y1", w.segment.a.y},
                          {"x2", w.segment.b.x},
                          {"y2", w.segment.b.y},
                          {"attenuation_db", w.attenuation_db}});
  }
  j["coordination_range"] = topology.coordination_range();
  j["seed"] = topology.seed();
  return j.dump(1);
}

Topology topology_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    MacroCell macro;
    const auto& jm = j.at("macro");
    macro.position = {jm.at("x").get<double>(), jm.at("y").get<double>()};
    macro.height_m = jm.at("height_m").get<double>();
    macro.tx_power_w = jm.at("tx_power_w").get<double>();
    macro.radius_m = jm.at("radius_m").get<double>();

    std::vector<FapDescriptor> faps;
    for (const auto& jf : j.at("faps")) {
      FapDescriptor f;
      f.id = FapId{jf.at("id").get<std::uint32_t>()};
      f.position = {jf.at("x").get<double>(), jf.at("y").get<double>()};
      f.height_m = jf.at("height_m").get<double>();
      f.tx_power_mw = jf.at("tx_power_mw").get<double>();
      f.radius_m = jf.at("radius_m").get<double>();
      f.frequency_channel = jf.at("channel").get<int>();
      const auto access = jf.at("access").get<std::string>();
      if (access != "open" && access != "closed") {
        throw ConfigError("FAP " + std::to_string(f.id.value) + ": access must be open|closed");
      }
      f.access_mode = access == "open" ? AccessMode::Open : AccessMode::Closed;
      f.authorized_users = jf.at("authorized_users").get<std::set<UserId>>();
      f.capacity = jf.at("capacity").get<int>();
      if (f.access_mode == AccessMode::Closed && f.authorized_users.empty()) {
        throw ConfigError("closed FAP " + std::to_string(f.id.value) +
                          " has no authorized users");
      }
      faps.push_back(std::move(f));
    }
    std::vector<Wall> walls;
    for (const auto& jw : j.at("walls")) {
      Wall w;
      w.segment = {{jw.at("x1").get<double>(), jw.at("y1").get<double>()},
                   {jw.at("x2").get<double>(), jw.at("y2").get<double>()}};
      w.attenuation_db = jw.at("attenuation_db").get<double>();
      if (w.attenuation_db < 0.0) throw ConfigError("wall attenuation must be >= 0");
      walls.push_back(w);
    }
    return Topology(macro, std::move(faps), std::move(walls),
                    j.at("coordination_range").get<double>(), j.at("seed").get<std::uint64_t>());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("topology file: ") + e.what());
  }
}

void save_topology(const Topology& topology, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << topology_to_json(topology) << '\n';
}

Topology load_topology(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return topology_from_json(ss.str());
}

}  // namespace femtonet
