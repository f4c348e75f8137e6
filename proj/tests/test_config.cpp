#include <doctest.h>

#include <algorithm>
#include <string>

#include "femtonet/config.hpp"
#include "femtonet/error.hpp"
#include "oracles.hpp"

using namespace femtonet;

namespace {

std::vector<std::string> problems_of(const std::string& text,
                                     const std::vector<std::string>& overrides = {}) {
  try {
    parse_config(text, overrides);
  } catch (const ConfigError& e) {
    return e.problems();
  }
  return {};
}

bool mentions(const std::vector<std::string>& problems, const std::string& needle) {
  return std::any_of(problems.begin(), problems.end(),
                     [&](const std::string& p) { return p.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("empty document gives defaults") {
  const auto c = parse_config("");
  CHECK(c.schema_version == 1);
  CHECK(c.topology.n == 1000);
  CHECK(c.topology.femto_radius_m == 10.0);
  CHECK(c.neighbor_list.thresholds.detect_dbm == -90.0);
  CHECK(c.neighbor_list.thresholds.strong_dbm == -75.0);
  CHECK(c.neighbor_list.thresholds.d_max_m == 20.0);
  CHECK(c.cac.capacity_kbps == 6000);
  CHECK(c.cac.gamma1_db == 10.0);
  CHECK(c.cac.gamma2_db == 12.0);
  CHECK(validate(c).empty());
  CHECK(parse_config("# only a comment\n").topology.n == 1000);
}

TEST_CASE("derived macro channel counts") {
  const auto c = parse_config("");
  CHECK(resolved_n_ch(c) == 100);
  CHECK(resolved_s_ch(c) == 23);
  const auto p = traffic_params(c);
  CHECK(p.N_ch == 100);
  CHECK(p.S_ch == 23);
  const auto explicit_counts = parse_config("traffic:\n  N_ch: 12\n  S_ch: 3\n");
  CHECK(resolved_n_ch(explicit_counts) == 12);
  CHECK(resolved_s_ch(explicit_counts) == 3);
}

TEST_CASE("threshold ordering names both keys") {
  const auto p = problems_of("neighbor_list:\n  strong_dbm: -95\n");
  REQUIRE(p.size() == 1);
  CHECK(p[0].find("neighbor_list.strong_dbm") != std::string::npos);
  CHECK(p[0].find("neighbor_list.detect_dbm") != std::string::npos);
}

TEST_CASE("unknown keys are rejected") {
  CHECK(mentions(problems_of("topology:\n  fmto_radius: 10\n"), "fmto_radius"));
  CHECK(mentions(problems_of("toplogy:\n  n: 3\n"), "toplogy"));
  CHECK(mentions(problems_of("", {"topology.fmto_radius=3"}), "fmto_radius"));
}

TEST_CASE("every problem is reported together") {
  const auto p = problems_of(
      "topology:\n  n: -1\n  fap_capacity: 0\ncac:\n  gamma2_db: 5\ntraffic:\n  alpha: 2\n");
  CHECK(p.size() >= 4);
  CHECK(mentions(p, "topology.n"));
  CHECK(mentions(p, "fap_capacity"));
  CHECK(mentions(p, "gamma2_db"));
  CHECK(mentions(p, "traffic.alpha"));
}

TEST_CASE("bad values and syntax") {
  CHECK(mentions(problems_of("topology:\n  n: many\n"), "topology.n"));
  CHECK(mentions(problems_of("topology: [1, 2\n"), "parse error"));
  CHECK(mentions(problems_of("schema_version: 7\n"), "schema_version"));
  CHECK(mentions(problems_of("topology:\n  n: 100000\n"), "must not exceed 1"));
  CHECK_THROWS_AS(load_config(oracle::data_path("does_not_exist.yaml")), ConfigError);
}

TEST_CASE("overrides") {
  auto c = parse_config("topology:\n  n: 5\n", {"topology.n=7", "cac.macro_model=channelized"});
  CHECK(c.topology.n == 7);
  CHECK(c.cac.macro_model == MacroModel::Channelized);
  apply_override(c, "traffic.alpha=0.25");
  CHECK(c.traffic.alpha == 0.25);
  CHECK(get_value(c, "traffic.alpha") == "0.25");
  CHECK_THROWS_AS(apply_override(c, "no_equals_sign"), ConfigError);
  CHECK_THROWS_AS(set_value(c, "topology.n", "x"), ConfigError);
  CHECK_THROWS_AS(get_value(c, "topology.nope"), ConfigError);
}

TEST_CASE("yaml round trip") {
  auto c = parse_config("", {"topology.n=321", "sim.horizon_s=500", "traffic.N_ch=9"});
  const auto again = parse_config(to_yaml(c));
  for (const auto& key : config_keys()) {
    CAPTURE(key);
    CHECK(get_value(again, key) == get_value(c, key));
  }
  const auto kv = effective_values(c);
  CHECK(kv.size() >= config_keys().size());
}

TEST_CASE("bundled configurations are valid") {
  for (const char* name : {"crossval.yaml", "trend.yaml"}) {
    CAPTURE(name);
    const auto c = load_config(oracle::data_path(name));
    CHECK(validate(c).empty());
  }
}
