#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "femtonet/geometry.hpp"

namespace femtonet {

struct FapId {
  std::uint32_t value = 0;

  friend auto operator<=>(const FapId&, const FapId&) = default;
};

using UserId = std::uint32_t;
using FapSet = std::set<FapId>;

enum class AccessMode { Open, Closed };

struct MacroCell {
  Point position;
  double height_m = 100.0;
  double tx_power_w = 1500.0;
  double radius_m = 500.0;
};

struct FapDescriptor {
  FapId id;
  Point position;
  double height_m = 2.0;
  double tx_power_mw = 10.0;
  double radius_m = 10.0;
  int frequency_channel = 0;
  AccessMode access_mode = AccessMode::Open;
  std::set<UserId> authorized_users;
  int capacity = 4;

  bool admits(UserId user) const {
    return access_mode == AccessMode::Open || authorized_users.contains(user);
  }
};

struct Wall {
  Segment segment;
  double attenuation_db = 10.0;
};

/// Knobs for one randomly generated scenario.
struct ScenarioParams {
  int n = 1000;
  double macro_radius_m = 500.0;
  double femto_radius_m = 10.0;
  double macro_height_m = 100.0;
  double macro_tx_power_w = 1500.0;
  double fap_height_m = 2.0;
  double fap_tx_power_mw = 10.0;
  int fap_capacity = 4;
  int channel_pool_size = 6;
  double coordination_range_m = 30.0;
  double closed_access_fraction = 0.3;
  int household_size = 3;
  // Expected number of wall segments generated around each FAP.
  double wall_density = 4.0;
  double wall_length_m = 12.0;
  double wall_attenuation_db = 15.0;
};

/// Geometric and administrative state of one scenario. Immutable once built.
class Topology {
 public:
  Topology() = default;
  Topology(MacroCell macro, std::vector<FapDescriptor> faps, std::vector<Wall> walls,
           double coordination_range_m, std::uint64_t seed);

  const MacroCell& macro() const { return macro_; }
  const std::vector<FapDescriptor>& faps() const { return faps_; }
  const std::vector<Wall>& walls() const { return walls_; }
  double coordination_range() const { return coordination_range_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  bool contains(FapId id) const;
  /// Throws LookupError for an unknown id.
  const FapDescriptor& fap(FapId id) const;

  /// FAPs whose position is within `radius` of `center` (inclusive), id order.
  std::vector<FapId> faps_within(Point center, double radius) const;
  /// True when `p` lies inside any FAP coverage disk.
  bool in_femto_coverage(Point p) const;

  /// Number of walls crossed by the straight path, and their summed attenuation.
  int wall_crossings(Point from, Point to) const;
  double wall_loss_db(Point from, Point to) const;

  friend bool operator==(const Topology& a, const Topology& b);

 private:
  friend Topology allocate_frequencies(const Topology&, int);

  void build_indices();
  std::int64_t cell_key(std::int64_t cx, std::int64_t cy) const;
  std::vector<std::size_t> walls_near(Point from, Point to) const;
  std::vector<std::size_t> walls_crossed(Point from, Point to) const;

  MacroCell macro_;
  std::vector<FapDescriptor> faps_;
  std::vector<Wall> walls_;
  double coordination_range_ = 30.0;
  std::uint64_t seed_ = 0;
  std::vector<std::string> warnings_;

  std::unordered_map<std::uint32_t, std::size_t> fap_index_;
  double grid_cell_ = 50.0;
  double wall_cell_ = 10.0;
  double max_fap_radius_ = 0.0;
  std::unordered_map<std::int64_t, std::vector<std::size_t>> fap_grid_;
  std::unordered_map<std::int64_t, std::vector<std::size_t>> wall_grid_;
};

/// Places `params.n` FAPs uniformly on the macrocell disk, draws access modes
/// and walls, then assigns channels. Deterministic for a given seed.
Topology generate_topology(const ScenarioParams& params, std::uint64_t seed);

/// Greedy colouring in FAP-id order: overlapping coverage disks get distinct
/// channels while the pool allows, preferring the channel whose nearest reuse is
/// farthest away; otherwise the least-conflicting channel is chosen and a
/// warning is recorded on the returned topology.
Topology allocate_frequencies(const Topology& topology, int channel_pool_size);

/// FAPs within the coordination range of `fap` (walls are irrelevant), excluding itself.
FapSet coordination_set(const Topology& topology, FapId fap);

/// Two-hop SON knowledge: coordinators of `serving` plus their coordinators.
FapSet known_locations(const Topology& topology, FapId serving);

std::string topology_to_json(const Topology& topology);
Topology topology_from_json(const std::string& text);
void save_topology(const Topology& topology, const std::string& path);
Topology load_topology(const std::string& path);

}  // namespace femtonet
