#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "femtonet/radio.hpp"
#include "femtonet/topology.hpp"

namespace femtonet {

/// One FAP as seen by the mobile. `distance_m` is present only when the
/// location is known through SON coordination.
struct Measurement {
  FapId fap;
  double rssi_dbm = 0.0;
  int frequency_channel = 0;
  std::optional<double> distance_m;
  bool accessible = true;
};

struct ListThresholds {
  double detect_dbm = -90.0;  // S_T0
  double strong_dbm = -75.0;  // S_T1
  double d_max_m = 20.0;
  // Drop co-channel FAPs from the hidden set instead of re-admitting them.
  bool hidden_excludes_cochannel = false;
};

enum class Provenance { Strong, Hidden, Detected };

struct NeighborEntry {
  FapId fap;
  Provenance provenance = Provenance::Strong;
  std::optional<double> rssi_dbm;
  std::optional<double> distance_m;
};

struct NeighborCellList {
  std::vector<NeighborEntry> entries;
  bool includes_macro = false;
  std::size_t n_det = 0;  // |A|
  std::size_t n_1 = 0;    // |B|
  std::size_t n_2 = 0;    // |C|
  std::size_t m = 0;      // |D|
  // N_1 - N_2 + M. Can exceed entries.size() when D overlaps B \ C.
  std::ptrdiff_t n_f = 0;

  bool contains(FapId fap) const;
};

std::vector<Measurement> detectable_set(std::span<const Measurement> measurements,
                                        double detect_dbm);
std::vector<Measurement> strong_set(std::span<const Measurement> detectable, double strong_dbm);
std::vector<Measurement> same_frequency_set(std::span<const Measurement> strong,
                                            int serving_channel);

/// Accessible, SON-located FAPs within d_max that are weak or on one of
/// `cochannel_channels`.
std::vector<Measurement> hidden_set(std::span<const Measurement> measurements,
                                    const FapSet& known, double strong_dbm,
                                    std::span<const int> cochannel_channels, double d_max_m,
                                    bool excludes_cochannel = false);

NeighborCellList build_list_fap_connected(std::span<const Measurement> measurements,
                                          FapId serving, int serving_channel,
                                          const FapSet& known, const ListThresholds& thresholds,
                                          bool macro_detected = true);

NeighborCellList build_list_macro_connected(std::span<const Measurement> measurements,
                                            const FapSet& known,
                                            const ListThresholds& thresholds);

/// RSSI-only baseline: everything accessible at or above S_T0.
NeighborCellList build_list_traditional(std::span<const Measurement> measurements,
                                        double detect_dbm, bool macro_detected = true);

/// Measurements for every FAP within `scan_range_m` of `ms` except `exclude`.
/// Distances are attached for members of `known`.
std::vector<Measurement> measure(const RadioEnvironment& radio, Point ms, UserId user,
                                 double scan_range_m, const FapSet& known,
                                 std::optional<FapId> exclude = std::nullopt);

}  // namespace femtonet
