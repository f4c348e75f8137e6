#include <doctest.h>

#include <random>
#include <set>

#include "femtonet/config.hpp"
#include "femtonet/neighbor_list.hpp"

using namespace femtonet;

namespace {

Measurement meas(std::uint32_t id, double rssi, int channel,
                 std::optional<double> dist = std::nullopt, bool accessible = true) {
  return Measurement{FapId{id}, rssi, channel, dist, accessible};
}

const ListThresholds kThr{};

std::set<std::uint32_t> ids(const std::vector<Measurement>& v) {
  std::set<std::uint32_t> out;
  for (const auto& m : v) out.insert(m.fap.value);
  return out;
}

}  // namespace

TEST_CASE("detectable set") {
  CHECK(detectable_set({}, -90).empty());
  const std::vector<Measurement> edge{meas(1, -90.0, 0)};
  CHECK(detectable_set(edge, -90).size() == 1);
  const std::vector<Measurement> mixed{meas(1, -85, 0), meas(2, -60, 0, {}, false)};
  CHECK(ids(detectable_set(mixed, -90)) == std::set<std::uint32_t>{1});
}

TEST_CASE("strong set") {
  const std::vector<Measurement> a{meas(1, -70, 0), meas(2, -80, 0)};
  CHECK(ids(strong_set(a, -75)) == std::set<std::uint32_t>{1});
  CHECK(strong_set(a, -90).size() == a.size());
}

TEST_CASE("same frequency set") {
  const std::vector<Measurement> b{meas(1, -70, 3), meas(2, -70, 4)};
  CHECK(ids(same_frequency_set(b, 3)) == std::set<std::uint32_t>{1});
  CHECK(same_frequency_set(b, 5).empty());
}

TEST_CASE("hidden set") {
  const FapSet known{FapId{1}, FapId{2}, FapId{3}, FapId{4}};
  const int ch[] = {0};
  SUBCASE("weak and close behind a wall") {
    const std::vector<Measurement> m{meas(1, -82, 1, 8.0)};
    CHECK(hidden_set(m, known, -75, ch, 20).size() == 1);
  }
  SUBCASE("beyond d_max") {
    const std::vector<Measurement> m{meas(1, -95, 1, 25.0)};
    CHECK(hidden_set(m, known, -75, ch, 20).empty());
  }
  SUBCASE("strong on another channel fails both disjuncts") {
    const std::vector<Measurement> m{meas(1, -70, 1, 8.0)};
    CHECK(hidden_set(m, known, -75, ch, 20).empty());
  }
  SUBCASE("strong co-channel enters literally, not under the strict flag") {
    const std::vector<Measurement> m{meas(1, -70, 0, 8.0)};
    CHECK(hidden_set(m, known, -75, ch, 20).size() == 1);
    CHECK(hidden_set(m, known, -75, ch, 20, true).empty());
  }
  SUBCASE("unknown location or inaccessible never enters") {
    const std::vector<Measurement> m{meas(9, -95, 1, 5.0), meas(2, -95, 1, 5.0, false),
                                     meas(3, -95, 1)};
    CHECK(hidden_set(m, known, -75, ch, 20).empty());
  }
}

TEST_CASE("fap-connected list") {
  SUBCASE("worked example") {
    const std::vector<Measurement> m{meas(1, -70, 0), meas(2, -80, 1, 8.0)};
    const auto l = build_list_fap_connected(m, FapId{0}, 0, FapSet{FapId{2}}, kThr);
    CHECK(l.n_1 == 1);
    CHECK(l.n_2 == 1);
    CHECK(l.m == 1);
    CHECK(l.n_f == 1);
    REQUIRE(l.entries.size() == 1);
    CHECK(l.entries[0].fap == FapId{2});
    CHECK(l.entries[0].provenance == Provenance::Hidden);
    CHECK(l.includes_macro);
  }
  SUBCASE("nothing detectable") {
    const std::vector<Measurement> m{meas(1, -99, 1)};
    const auto l = build_list_fap_connected(m, FapId{0}, 0, {}, kThr);
    CHECK(l.entries.empty());
    CHECK(l.includes_macro);
  }
  SUBCASE("serving measurement is ignored") {
    const std::vector<Measurement> m{meas(0, -50, 0), meas(1, -60, 1)};
    const auto l = build_list_fap_connected(m, FapId{0}, 0, {}, kThr);
    REQUIRE(l.entries.size() == 1);
    CHECK(l.entries[0].fap == FapId{1});
  }
  SUBCASE("strong entries by rssi, hidden by distance, no duplicates") {
    const std::vector<Measurement> m{meas(1, -72, 1), meas(2, -60, 2), meas(3, -95, 1, 15.0),
                                     meas(4, -88, 2, 6.0), meas(5, -74, 3, 9.0)};
    const FapSet known{FapId{3}, FapId{4}, FapId{5}};
    const auto l = build_list_fap_connected(m, FapId{0}, 0, known, kThr);
    std::vector<std::uint32_t> order;
    for (const auto& e : l.entries) order.push_back(e.fap.value);
    CHECK(order == std::vector<std::uint32_t>{2, 1, 5, 4, 3});
  }
}

TEST_CASE("hidden FAP behind a wall enters through coordination") {
  // Serving FAP 0 at the origin; FAP 1 is 12 m past a 40 dB wall, FAP 2
  // coordinates with both and relays FAP 1's location.
  std::vector<FapDescriptor> faps(3);
  for (std::uint32_t i = 0; i < 3; ++i) faps[i].id = FapId{i};
  faps[0].position = {0, 0};
  faps[1].position = {32, 0};
  faps[2].position = {16, 12};
  faps[1].frequency_channel = 1;
  faps[2].frequency_channel = 2;
  const std::vector<Wall> walls{{{{24, -6}, {24, 6}}, 40.0}};
  const Topology t(MacroCell{}, faps, walls, 30.0, 0);
  const RadioEnvironment radio(t, RadioParams{});
  const Point ms{20, 0};
  const auto known = known_locations(t, FapId{0});
  REQUIRE(known.contains(FapId{1}));
  const auto m = measure(radio, ms, 0, 150, known, FapId{0});
  const auto proposed = build_list_fap_connected(m, FapId{0}, 0, known, kThr);
  const auto traditional = build_list_traditional(m, kThr.detect_dbm);
  CHECK(radio.fap_rssi_dbm(ms, FapId{1}) < kThr.detect_dbm);
  CHECK(proposed.contains(FapId{1}));
  CHECK_FALSE(traditional.contains(FapId{1}));
}

TEST_CASE("macro-connected list") {
  SUBCASE("farther co-channel strong FAP removed") {
    const std::vector<Measurement> m{meas(1, -60, 0, 5.0), meas(2, -70, 0, 12.0)};
    ListThresholds thr = kThr;
    thr.d_max_m = 10.0;  // keep the removed FAP from re-entering as hidden
    const auto l = build_list_macro_connected(m, FapSet{FapId{1}, FapId{2}}, thr);
    CHECK(l.n_2 == 1);
    CHECK(l.contains(FapId{1}));
    CHECK_FALSE(l.contains(FapId{2}));
    CHECK_FALSE(l.includes_macro);
  }
  SUBCASE("nearest by rssi when locations unknown") {
    const std::vector<Measurement> m{meas(1, -70, 0), meas(2, -60, 0)};
    const auto l = build_list_macro_connected(m, {}, kThr);
    CHECK(l.n_2 == 1);
    CHECK(l.contains(FapId{2}));
    CHECK_FALSE(l.contains(FapId{1}));
  }
  SUBCASE("distinct channels keep all") {
    const std::vector<Measurement> m{meas(1, -60, 0), meas(2, -70, 1), meas(3, -85, 2, 10.0)};
    const auto l = build_list_macro_connected(m, FapSet{FapId{3}}, kThr);
    CHECK(l.n_2 == 0);
    CHECK(l.entries.size() == 3);
  }
  SUBCASE("a removed co-channel FAP can re-enter as hidden, listed once") {
    const std::vector<Measurement> m{meas(1, -60, 0, 5.0), meas(2, -70, 0, 12.0)};
    const auto l = build_list_macro_connected(m, FapSet{FapId{1}, FapId{2}}, kThr);
    CHECK(l.m == 2);
    CHECK(l.n_f == 3);
    CHECK(l.entries.size() == 2);
  }
  SUBCASE("single strong retained") {
    const std::vector<Measurement> m{meas(1, -60, 0)};
    CHECK(build_list_macro_connected(m, {}, kThr).contains(FapId{1}));
  }
}

TEST_CASE("traditional list") {
  CHECK(build_list_traditional({}, -90).entries.empty());
  const std::vector<Measurement> m{meas(1, -95, 0, 3.0), meas(2, -80, 1), meas(3, -70, 2)};
  const auto l = build_list_traditional(m, -90);
  REQUIRE(l.entries.size() == 2);
  CHECK(l.entries[0].fap == FapId{3});
  CHECK_FALSE(l.contains(FapId{1}));
  const auto p = build_list_fap_connected(m, FapId{0}, 5, FapSet{FapId{1}}, kThr);
  CHECK(p.contains(FapId{1}));
}

TEST_CASE("list properties over random scenarios") {
  const auto cfg = parse_config("");
  ScenarioParams params = cfg.topology;
  params.n = 800;
  const auto topo = generate_topology(params, 77);
  const RadioEnvironment radio(topo, cfg.radio);
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::size_t> pick(0, topo.faps().size() - 1);
  for (int t = 0; t < 400; ++t) {
    const auto& serving = topo.faps()[pick(rng)];
    const Point ms = uniform_in_disk(rng, serving.position, 20.0);
    const auto known = known_locations(topo, serving.id);
    const auto m = measure(radio, ms, 0, 150, known, serving.id);
    const auto l = build_list_fap_connected(m, serving.id, serving.frequency_channel, known, kThr);
    const auto trad = build_list_traditional(m, kThr.detect_dbm);

    CHECK(l.n_f == static_cast<std::ptrdiff_t>(l.n_1) - static_cast<std::ptrdiff_t>(l.n_2) +
                       static_cast<std::ptrdiff_t>(l.m));
    CHECK(static_cast<std::ptrdiff_t>(l.entries.size()) <= l.n_f);
    CHECK(l.entries.size() <= trad.entries.size() + l.m);
    std::set<FapId> seen;
    for (const auto& e : l.entries) {
      CHECK(seen.insert(e.fap).second);
      if (e.provenance == Provenance::Strong) CHECK(*e.rssi_dbm >= kThr.strong_dbm);
      if (e.provenance == Provenance::Hidden) CHECK(*e.distance_m <= kThr.d_max_m);
    }
    // completeness: every known, accessible FAP within d_max satisfying the
    // hidden disjunct is listed
    for (const auto& x : m) {
      if (!x.accessible || !x.distance_m || *x.distance_m > kThr.d_max_m) continue;
      if (x.rssi_dbm < kThr.strong_dbm || x.frequency_channel == serving.frequency_channel) {
        CHECK(l.contains(x.fap));
      }
    }
    // raising S_T1 never grows N_1
    ListThresholds higher = kThr;
    higher.strong_dbm = -65;
    const auto l2 =
        build_list_fap_connected(m, serving.id, serving.frequency_channel, known, higher);
    CHECK(l2.n_1 <= l.n_1);
  }
}

TEST_CASE("measure attaches distance only for known FAPs") {
  ScenarioParams params;
  params.n = 300;
  const auto topo = generate_topology(params, 5);
  const RadioEnvironment radio(topo, RadioParams{});
  const auto& f = topo.faps()[0];
  const auto known = known_locations(topo, f.id);
  for (const auto& m : measure(radio, f.position, 0, 150, known, f.id)) {
    CHECK(m.fap != f.id);
    CHECK(m.distance_m.has_value() == known.contains(m.fap));
    CHECK(std::isfinite(m.rssi_dbm));
  }
}
