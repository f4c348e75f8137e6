#include "femtonet/ncl_bench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>

#include "femtonet/neighbor_list.hpp"
#include "femtonet/parallel.hpp"

namespace femtonet {

namespace {
constexpr std::uint64_t kBenchStream = 20;
}

std::vector<NclTrial> ncl_trials(const ScenarioConfig& config, int n, std::uint64_t seed,
                                 int trials) {
  auto params = config.topology;
  params.n = n;
  const auto topo = generate_topology(params, seed);
  const RadioEnvironment radio(topo, config.radio);
  const auto& thr = config.neighbor_list.thresholds;
  std::mt19937_64 rng(derive_seed(seed, kBenchStream));
  std::vector<NclTrial> out;
  if (topo.faps().empty()) return out;

  std::uniform_int_distribution<std::size_t> pick(0, topo.faps().size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    const auto& serving = topo.faps()[pick(rng)];
    const double r = serving.radius_m * (1.0 + unit(rng));
    const double theta = 2.0 * std::numbers::pi * unit(rng);
    const Point ms{serving.position.x + r * std::cos(theta),
                   serving.position.y + r * std::sin(theta)};
    const UserId user =
        serving.authorized_users.empty() ? 0 : *serving.authorized_users.begin();

    const auto known = known_locations(topo, serving.id);
    const auto meas =
        measure(radio, ms, user, config.neighbor_list.scan_range_m, known, serving.id);
    const auto proposed =
        build_list_fap_connected(meas, serving.id, serving.frequency_channel, known, thr);
    const auto traditional = build_list_traditional(meas, thr.detect_dbm);

    NclTrial trial;
    trial.seed = seed;
    trial.n = n;
    trial.proposed_size = proposed.entries.size();
    trial.traditional_size = traditional.entries.size();
    trial.n_f = proposed.n_f;

    std::optional<FapId> target;
    double best = std::numeric_limits<double>::infinity();
    // faps_within is in id order, so strict < keeps the lowest id on ties.
    for (const auto id : topo.faps_within(ms, thr.d_max_m)) {
      if (id == serving.id) continue;
      const auto& f = topo.fap(id);
      if (!f.admits(user)) continue;
      const double d = distance(ms, f.position);
      if (d < best) {
        best = d;
        target = id;
      }
    }
    if (target) {
      trial.has_target = true;
      trial.target_in_proposed = proposed.contains(*target);
      trial.target_in_traditional = traditional.contains(*target);
    }

    const int channels[] = {serving.frequency_channel};
    const auto hidden = hidden_set(meas, known, thr.strong_dbm, channels, thr.d_max_m,
                                   thr.hidden_excludes_cochannel);
    trial.hidden_known = hidden.size();
    for (const auto& h : hidden) {
      if (proposed.contains(h.fap)) ++trial.hidden_included;
    }
    out.push_back(trial);
  }
  return out;
}

std::vector<NclTrial> ncl_bench(const ScenarioConfig& config, const NclBenchOptions& options) {
  struct Job {
    int n;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (int n : options.densities) {
    for (int s = 0; s < options.seeds; ++s) {
      jobs.push_back({n, options.base_seed + static_cast<std::uint64_t>(s)});
    }
  }
  auto results = parallel_map(jobs.size(), options.jobs, [&](std::size_t i) {
    return ncl_trials(config, jobs[i].n, jobs[i].seed, options.trials_per_seed);
  });
  std::vector<NclTrial> all;
  for (auto& r : results) all.insert(all.end(), r.begin(), r.end());
  return all;
}

std::vector<NclDensitySummary> summarize_ncl(const std::vector<NclTrial>& trials) {
  std::map<int, std::vector<const NclTrial*>> by_n;
  for (const auto& t : trials) by_n[t.n].push_back(&t);
  std::vector<NclDensitySummary> out;
  for (const auto& [n, group] : by_n) {
    NclDensitySummary s;
    s.n = n;
    s.trials = group.size();
    std::vector<double> trad, prop;
    std::uint64_t targets = 0, miss_t = 0, miss_p = 0;
    for (const auto* t : group) {
      trad.push_back(static_cast<double>(t->traditional_size));
      prop.push_back(static_cast<double>(t->proposed_size));
      s.hidden_known += t->hidden_known;
      s.hidden_included += t->hidden_included;
      if (!t->has_target) continue;
      ++targets;
      if (!t->target_in_traditional) ++miss_t;
      if (!t->target_in_proposed) ++miss_p;
    }
    s.traditional_size = summarize(trad);
    s.proposed_size = summarize(prop);
    s.missing_traditional = proportion(miss_t, targets);
    s.missing_proposed = proportion(miss_p, targets);
    out.push_back(s);
  }
  return out;
}

}  // namespace femtonet
