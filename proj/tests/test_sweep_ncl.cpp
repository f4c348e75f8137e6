#include <doctest.h>

#include <sstream>

#include "femtonet/config.hpp"
#include "femtonet/error.hpp"
#include "femtonet/ncl_bench.hpp"
#include "femtonet/sweep.hpp"

using namespace femtonet;

TEST_CASE("sweep parameter names") {
  CHECK(resolve_param("n") == "topology.n");
  CHECK(resolve_param("traffic.alpha") == "traffic.alpha");
  CHECK_THROWS_AS(resolve_param("nonsense"), ConfigError);
}

TEST_CASE("analytic sweep values") {
  SweepOptions o;
  o.param = "alpha";
  o.from = 0;
  o.to = 1;
  o.points = 5;
  const auto pts = run_sweep(parse_config(""), o);
  REQUIRE(pts.size() == 5);
  CHECK(pts[0].value == 0.0);
  CHECK(pts[2].value == 0.5);
  CHECK(pts[4].config.traffic.alpha == 1.0);
  for (const auto& p : pts) {
    CHECK(p.analytic.converged);
    CHECK(p.runs.empty());
  }
}

TEST_CASE("seeded sweep is independent of thread count") {
  auto base = parse_config("", {"topology.n=10", "topology.macro_radius_m=100", "sim.horizon_s=500"});
  SweepOptions o;
  o.from = 0;
  o.to = 20;
  o.points = 2;
  o.seeds = 2;
  o.jobs = 1;
  const auto one = run_sweep(base, o);
  o.jobs = 3;
  const auto three = run_sweep(base, o);
  std::ostringstream a, b;
  write_sweep_csv(a, "topology.n", one);
  write_sweep_csv(b, "topology.n", three);
  CHECK(a.str() == b.str());
  CHECK(one[1].runs.size() == 2);
  CHECK(one[1].sim.conserved);
}

TEST_CASE("ncl bench") {
  const auto config = parse_config("");
  NclBenchOptions o;
  o.densities = {100, 400};
  o.seeds = 2;
  o.trials_per_seed = 50;
  const auto serial = ncl_bench(config, o);
  CHECK(serial.size() == 200);
  o.jobs = 2;
  const auto parallel = ncl_bench(config, o);
  REQUIRE(parallel.size() == serial.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].seed == parallel[i].seed);
    CHECK(serial[i].proposed_size == parallel[i].proposed_size);
    CHECK(serial[i].target_in_proposed == parallel[i].target_in_proposed);
  }
  const auto summary = summarize_ncl(serial);
  REQUIRE(summary.size() == 2);
  CHECK(summary[0].n == 100);
  CHECK(summary[1].trials == 100);
  for (const auto& t : serial) {
    CHECK(t.hidden_included <= t.hidden_known);
    if (t.target_in_proposed) CHECK(t.has_target);
  }
}
