#include "femtonet/neighbor_list.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace femtonet {

bool NeighborCellList::contains(FapId fap) const {
  return std::any_of(entries.begin(), entries.end(),
                     [&](const NeighborEntry& e) { return e.fap == fap; });
}

std::vector<Measurement> detectable_set(std::span<const Measurement> measurements,
                                        double detect_dbm) {
  std::vector<Measurement> out;
  for (const auto& m : measurements) {
    if (m.accessible && m.rssi_dbm >= detect_dbm) out.push_back(m);
  }
  return out;
}

std::vector<Measurement> strong_set(std::span<const Measurement> detectable, double strong_dbm) {
  std::vector<Measurement> out;
  for (const auto& m : detectable) {
    if (m.rssi_dbm >= strong_dbm) out.push_back(m);
  }
  return out;
}

std::vector<Measurement> same_frequency_set(std::span<const Measurement> strong,
                                            int serving_channel) {
  std::vector<Measurement> out;
  for (const auto& m : strong) {
    if (m.frequency_channel == serving_channel) out.push_back(m);
  }
  return out;
}

std::vector<Measurement> hidden_set(std::span<const Measurement> measurements,
                                    const FapSet& known, double strong_dbm,
                                    std::span<const int> cochannel_channels, double d_max_m,
                                    bool excludes_cochannel) {
  std::vector<Measurement> out;
  for (const auto& m : measurements) {
    if (!m.accessible || !known.contains(m.fap) || !m.distance_m) continue;
    if (*m.distance_m > d_max_m) continue;
    const bool cochannel = std::find(cochannel_channels.begin(), cochannel_channels.end(),
                                     m.frequency_channel) != cochannel_channels.end();
    const bool weak = m.rssi_dbm < strong_dbm;
    const bool admitted = excludes_cochannel ? (weak && !cochannel) : (weak || cochannel);
    if (admitted) out.push_back(m);
  }
  return out;
}

namespace {

bool contains_fap(std::span<const Measurement> set, FapId fap) {
  return std::any_of(set.begin(), set.end(), [&](const Measurement& m) { return m.fap == fap; });
}

// E = (B \ C) ∪ D with strong entries by descending RSSI, then hidden ones by distance.
NeighborCellList assemble(std::span<const Measurement> a, std::span<const Measurement> b,
                          std::span<const Measurement> c, std::span<const Measurement> d) {
  NeighborCellList list;
  list.n_det = a.size();
  list.n_1 = b.size();
  list.n_2 = c.size();
  list.m = d.size();
  list.n_f = static_cast<std::ptrdiff_t>(b.size()) - static_cast<std::ptrdiff_t>(c.size()) +
             static_cast<std::ptrdiff_t>(d.size());

  std::vector<Measurement> strong;
  for (const auto& m : b) {
    if (!contains_fap(c, m.fap)) strong.push_back(m);
  }
  std::stable_sort(strong.begin(), strong.end(), [](const Measurement& x, const Measurement& y) {
    if (x.rssi_dbm != y.rssi_dbm) return x.rssi_dbm > y.rssi_dbm;
    return x.fap < y.fap;
  });
  std::vector<Measurement> hidden;
  for (const auto& m : d) {
    if (!contains_fap(strong, m.fap)) hidden.push_back(m);
  }
  std::stable_sort(hidden.begin(), hidden.end(), [](const Measurement& x, const Measurement& y) {
    if (*x.distance_m != *y.distance_m) return *x.distance_m < *y.distance_m;
    return x.fap < y.fap;
  });
  for (const auto& m : strong) {
    list.entries.push_back({m.fap, Provenance::Strong, m.rssi_dbm, m.distance_m});
  }
  for (const auto& m : hidden) {
    list.entries.push_back({m.fap, Provenance::Hidden, m.rssi_dbm, m.distance_m});
  }
  return list;
}

std::vector<Measurement> without(std::span<const Measurement> measurements, FapId fap) {
  std::vector<Measurement> out;
  for (const auto& m : measurements) {
    if (m.fap != fap) out.push_back(m);
  }
  return out;
}

}  // namespace

NeighborCellList build_list_fap_connected(std::span<const Measurement> measurements,
                                          FapId serving, int serving_channel,
                                          const FapSet& known, const ListThresholds& thresholds,
                                          bool macro_detected) {
  const auto others = without(measurements, serving);
  const auto a = detectable_set(others, thresholds.detect_dbm);
  const auto b = strong_set(a, thresholds.strong_dbm);
  const auto c = same_frequency_set(b, serving_channel);
  const int channels[] = {serving_channel};
  const auto d = hidden_set(others, known, thresholds.strong_dbm, channels, thresholds.d_max_m,
                            thresholds.hidden_excludes_cochannel);
  auto list = assemble(a, b, c, d);
  list.includes_macro = macro_detected;
  return list;
}

NeighborCellList build_list_macro_connected(std::span<const Measurement> measurements,
                                            const FapSet& known,
                                            const ListThresholds& thresholds) {
  const auto a = detectable_set(measurements, thresholds.detect_dbm);
  const auto b = strong_set(a, thresholds.strong_dbm);

  std::map<int, std::vector<Measurement>> by_channel;
  for (const auto& m : b) by_channel[m.frequency_channel].push_back(m);

  std::vector<Measurement> c;
  std::vector<int> crowded_channels;
  for (auto& [channel, group] : by_channel) {
    if (group.size() < 2) continue;
    crowded_channels.push_back(channel);
    const bool all_located = std::all_of(group.begin(), group.end(),
                                         [](const Measurement& m) { return m.distance_m.has_value(); });
    const auto nearest = std::min_element(
        group.begin(), group.end(), [&](const Measurement& x, const Measurement& y) {
          if (all_located && *x.distance_m != *y.distance_m) return *x.distance_m < *y.distance_m;
          if (!all_located && x.rssi_dbm != y.rssi_dbm) return x.rssi_dbm > y.rssi_dbm;
          return x.fap < y.fap;
        });
    for (auto it = group.begin(); it != group.end(); ++it) {
      if (it != nearest) c.push_back(*it);
    }
  }
  const auto d = hidden_set(measurements, known, thresholds.strong_dbm, crowded_channels,
                            thresholds.d_max_m, thresholds.hidden_excludes_cochannel);
  auto list = assemble(a, b, c, d);
  list.includes_macro = false;
  return list;
}

NeighborCellList build_list_traditional(std::span<const Measurement> measurements,
                                        double detect_dbm, bool macro_detected) {
  auto a = detectable_set(measurements, detect_dbm);
  std::stable_sort(a.begin(), a.end(), [](const Measurement& x, const Measurement& y) {
    if (x.rssi_dbm != y.rssi_dbm) return x.rssi_dbm > y.rssi_dbm;
    return x.fap < y.fap;
  });
  NeighborCellList list;
  list.n_det = a.size();
  list.n_f = static_cast<std::ptrdiff_t>(a.size());
  for (const auto& m : a) {
    list.entries.push_back({m.fap, Provenance::Detected, m.rssi_dbm, m.distance_m});
  }
  list.includes_macro = macro_detected;
  return list;
}

std::vector<Measurement> measure(const RadioEnvironment& radio, Point ms, UserId user,
                                 double scan_range_m, const FapSet& known,
                                 std::optional<FapId> exclude) {
  std::vector<Measurement> out;
  const auto& topo = radio.topology();
  for (const auto id : topo.faps_within(ms, scan_range_m)) {
    if (exclude && id == *exclude) continue;
    const auto& f = topo.fap(id);
    Measurement m;
    m.fap = id;
    m.rssi_dbm = radio.fap_rssi_dbm(ms, id);
    m.frequency_channel = f.frequency_channel;
    m.accessible = f.admits(user);
    if (known.contains(id)) m.distance_m = distance(ms, f.position);
    out.push_back(m);
  }
  return out;
}

}  // namespace femtonet
