#include "femtonet/sweep.hpp"

#include <cmath>
#include <ostream>

#include "femtonet/error.hpp"
#include "femtonet/parallel.hpp"
#include "femtonet/report.hpp"

namespace femtonet {

SeedAggregate aggregate(const std::vector<MetricsReport>& reports) {
  std::vector<double> pbm, pdm, pbf, pdf, ft, alpha, rel;
  SeedAggregate a;
  auto add = [](std::vector<double>& v, const Estimate& e) {
    if (e.defined) v.push_back(e.value);
  };
  for (const auto& r : reports) {
    add(pbm, r.P_B_m);
    add(pdm, r.P_D_m);
    add(pbf, r.P_B_f);
    add(pdf, r.P_D_f);
    add(ft, r.forced_termination);
    add(alpha, r.alpha);
    rel.push_back(r.macro_channel_release_rate);
    a.conserved = a.conserved && r.conserved();
  }
  a.P_B_m = summarize(pbm);
  a.P_D_m = summarize(pdm);
  a.P_B_f = summarize(pbf);
  a.P_D_f = summarize(pdf);
  a.forced_termination = summarize(ft);
  a.alpha = summarize(alpha);
  a.macro_channel_release_rate = summarize(rel);
  return a;
}

std::vector<MetricsReport> run_seeds(const ScenarioConfig& config, int count, int jobs) {
  require_valid(config);
  return parallel_map(static_cast<std::size_t>(std::max(0, count)), jobs, [&](std::size_t i) {
    return run_simulation(config, config.sim.seed + i);
  });
}

std::string resolve_param(const std::string& param) {
  const auto keys = config_keys();
  if (std::find(keys.begin(), keys.end(), param) != keys.end()) return param;
  std::string match;
  for (const auto& k : keys) {
    if (k.substr(k.find('.') + 1) != param) continue;
    if (!match.empty()) throw ConfigError("ambiguous sweep parameter '" + param + "'");
    match = k;
  }
  if (match.empty()) throw ConfigError("unknown sweep parameter '" + param + "'");
  return match;
}

namespace {

std::string value_text(double v) {
  if (std::floor(v) == v && std::abs(v) < 9e15) {
    return std::to_string(static_cast<long long>(v));
  }
  return format_number(v);
}

}  // namespace

std::vector<SweepPoint> run_sweep(const ScenarioConfig& base, const SweepOptions& options) {
  if (options.points < 1) throw ConfigError("sweep needs at least one point");
  if (options.seeds < 0) throw ConfigError("seed count must be >= 0");
  const auto key = resolve_param(options.param);

  std::vector<SweepPoint> points(static_cast<std::size_t>(options.points));
  for (int i = 0; i < options.points; ++i) {
    auto& p = points[i];
    p.value = options.points == 1
                  ? options.from
                  : options.from + (options.to - options.from) * i / (options.points - 1);
    p.config = base;
    set_value(p.config, key, value_text(p.value));
    require_valid(p.config);
  }

  // Flatten (point, seed) so every run can go to the pool at once.
  const std::size_t seeds = static_cast<std::size_t>(options.seeds);
  auto runs = parallel_map(points.size() * seeds, options.jobs, [&](std::size_t j) {
    const auto& cfg = points[j / seeds].config;
    return run_simulation(cfg, cfg.sim.seed + j % seeds);
  });

  for (std::size_t i = 0; i < points.size(); ++i) {
    auto& p = points[i];
    const auto params = traffic_params(p.config);
    p.analytic = solve_fixed_point(params, solver_options(p.config));
    if (seeds == 0) continue;
    p.runs.assign(runs.begin() + static_cast<std::ptrdiff_t>(i * seeds),
                  runs.begin() + static_cast<std::ptrdiff_t>((i + 1) * seeds));
    p.sim = aggregate(p.runs);
    if (p.config.sim.alpha_feedback && p.sim.alpha.count > 0) {
      auto fb = params;
      fb.alpha = p.sim.alpha.mean;
      p.feedback = solve_fixed_point(fb, solver_options(p.config));
      p.has_feedback = true;
    }
  }
  return points;
}

std::vector<std::string> analytic_csv_header() {
  return {"lambda_f_o", "lambda_m_o",  "lambda_h_mm", "lambda_h_mf",        "lambda_h_ff",
          "lambda_h_fm", "P_B_f",      "P_D_f",       "P_B_m",              "P_D_m",
          "P_h_mm",     "P_h_mf",      "P_h_ff",      "P_h_fm",             "mu_m",
          "mu_f",       "lambda_T_f",  "lambda_h_m",  "forced_termination", "iterations",
          "converged",  "residual"};
}

std::vector<std::string> analytic_csv_row(const TrafficParams& p, const TrafficSolution& s) {
  auto f = format_number;
  return {f(p.lambda_f_o),   f(p.lambda_m_o),          f(s.lambda_h_mm),
          f(s.lambda_h_mf),  f(s.lambda_h_ff),         f(s.lambda_h_fm),
          f(s.P_B_f),        f(s.P_D_f),               f(s.P_B_m),
          f(s.P_D_m),        f(s.P_h_mm),              f(s.P_h_mf),
          f(s.P_h_ff),       f(s.P_h_fm),              f(s.mu_m),
          f(s.mu_f),         f(s.lambda_T_f),          f(s.lambda_h_m),
          f(s.forced_termination), std::to_string(s.iterations), s.converged ? "true" : "false",
          f(s.residual)};
}

namespace {

void add_summary(std::vector<std::string>& row, const SampleSummary& s, bool present) {
  if (!present || s.count == 0) {
    row.insert(row.end(), {"", ""});
    return;
  }
  row.push_back(format_number(s.mean));
  row.push_back(format_number(s.half_width));
}

}  // namespace

void write_sweep_csv(std::ostream& out, const std::string& param,
                     const std::vector<SweepPoint>& points) {
  CsvWriter csv(out);
  std::vector<std::string> header = {"param", "value"};
  for (const auto& h : analytic_csv_header()) header.push_back(h);
  for (const char* m : {"P_B_m", "P_D_m", "P_B_f", "P_D_f", "forced_termination", "alpha",
                        "macro_release_rate"}) {
    header.push_back(std::string("sim_") + m);
    header.push_back(std::string("sim_") + m + "_hw");
  }
  header.insert(header.end(), {"sim_seeds", "sim_conserved", "fb_P_B_m", "fb_P_D_f",
                               "fb_forced_termination"});
  csv.row(header);

  for (const auto& p : points) {
    std::vector<std::string> row = {param, value_text(p.value)};
    for (auto& v : analytic_csv_row(traffic_params(p.config), p.analytic)) row.push_back(v);
    const bool sim = !p.runs.empty();
    add_summary(row, p.sim.P_B_m, sim);
    add_summary(row, p.sim.P_D_m, sim);
    add_summary(row, p.sim.P_B_f, sim);
    add_summary(row, p.sim.P_D_f, sim);
    add_summary(row, p.sim.forced_termination, sim);
    add_summary(row, p.sim.alpha, sim);
    add_summary(row, p.sim.macro_channel_release_rate, sim);
    row.push_back(std::to_string(p.runs.size()));
    row.push_back(sim ? (p.sim.conserved ? "true" : "false") : "");
    if (p.has_feedback) {
      row.push_back(format_number(p.feedback.P_B_m));
      row.push_back(format_number(p.feedback.P_D_f));
      row.push_back(format_number(p.feedback.forced_termination));
    } else {
      row.insert(row.end(), {"", "", ""});
    }
    csv.row(row);
  }
}

}  // namespace femtonet
