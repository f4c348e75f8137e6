#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <memory>
#include <sstream>

#include "femtonet/config.hpp"
#include "femtonet/error.hpp"
#include "femtonet/ncl_bench.hpp"
#include "femtonet/report.hpp"
#include "femtonet/signaling.hpp"
#include "femtonet/sim.hpp"
#include "femtonet/sweep.hpp"
#include "femtonet/topology.hpp"
#include "femtonet/traffic.hpp"

namespace femtonet::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigInput {
  std::string path;
  std::vector<std::string> overrides;

  void attach(CLI::App* cmd) {
    cmd->add_option("-c,--config", path, "YAML scenario file (defaults when omitted)");
    cmd->add_option("--set", overrides, "Override a key: section.key=value (repeatable)");
  }

  ScenarioConfig load() const {
    if (path.empty()) return parse_config("", overrides);
    return load_config(path, overrides);
  }
};

// Writes to a file when a path is given, otherwise to the default stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw ConfigError("cannot open output file '" + path + "'");
    stream_ = file_.get();
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

KeyValues solution_values(const TrafficParams& p, const TrafficSolution& s) {
  KeyValues kv;
  const auto header = analytic_csv_header();
  const auto row = analytic_csv_row(p, s);
  for (std::size_t i = 0; i < header.size(); ++i) kv.emplace_back(header[i], row[i]);
  return kv;
}

int cmd_analytic(const ConfigInput& in, bool csv, std::optional<double> alpha, std::ostream& out) {
  const auto config = in.load();
  auto params = traffic_params(config);
  if (alpha) params.alpha = *alpha;
  const auto sol = solve_fixed_point(params, solver_options(config));
  if (csv) {
    CsvWriter w(out);
    auto header = analytic_csv_header();
    w.row(header);
    w.row(analytic_csv_row(params, sol));
  } else {
    auto kv = solution_values(params, sol);
    kv.insert(kv.begin(), {"alpha", format_number(params.alpha)});
    kv.insert(kv.begin(), {"N_ch", std::to_string(params.N_ch)});
    kv.insert(kv.begin(), {"S_ch", std::to_string(params.S_ch)});
    write_key_values(out, kv);
  }
  return sol.converged ? kOk : kDomainError;
}

int cmd_simulate(const ConfigInput& in, std::optional<std::uint64_t> seed,
                 std::optional<double> horizon, bool csv, const std::string& log_path,
                 std::ostream& out) {
  const auto config = in.load();
  RunOptions options;
  options.horizon_s = horizon;
  std::unique_ptr<std::ofstream> log;
  if (!log_path.empty()) {
    log = std::make_unique<std::ofstream>(log_path);
    if (!*log) throw ConfigError("cannot open decision log '" + log_path + "'");
    *log << "time,session,event_kind,outcome,granted,degraded_count\n";
    options.decision_log = log.get();
  }
  const auto report = run_simulation(config, seed.value_or(config.sim.seed), options);
  if (csv) {
    CsvWriter w(out);
    w.row(report_csv_header());
    w.row(report_csv_row(report));
    return kOk;
  }
  auto kv = report_values(report);
  if (config.sim.alpha_feedback && report.alpha.defined) {
    auto params = traffic_params(config);
    params.alpha = report.alpha.value;
    const auto sol = solve_fixed_point(params, solver_options(config));
    kv.emplace_back("analytic_alpha", format_number(params.alpha));
    kv.emplace_back("analytic_P_B_m", format_number(sol.P_B_m));
    kv.emplace_back("analytic_P_D_m", format_number(sol.P_D_m));
    kv.emplace_back("analytic_P_B_f", format_number(sol.P_B_f));
    kv.emplace_back("analytic_forced_termination", format_number(sol.forced_termination));
  }
  write_key_values(out, kv);
  return kOk;
}

int cmd_sweep(const ConfigInput& in, const SweepOptions& options, const std::string& output,
              std::ostream& out) {
  const auto config = in.load();
  const auto points = run_sweep(config, options);
  Sink sink(output, out);
  write_sweep_csv(*sink, resolve_param(options.param), points);
  return kOk;
}

int cmd_ncl_bench(const ConfigInput& in, const NclBenchOptions& options, bool summary,
                  const std::string& output, std::ostream& out) {
  const auto config = in.load();
  const auto trials = ncl_bench(config, options);
  Sink sink(output, out);
  CsvWriter w(*sink);
  if (summary) {
    w.row({"n", "trials", "targets", "traditional_size_mean", "proposed_size_mean",
           "missing_traditional", "missing_traditional_hw", "missing_proposed",
           "missing_proposed_hw", "hidden_known", "hidden_included"});
    for (const auto& s : summarize_ncl(trials)) {
      w.row({std::to_string(s.n), std::to_string(s.trials),
             std::to_string(s.missing_proposed.trials), format_number(s.traditional_size.mean),
             format_number(s.proposed_size.mean), format_number(s.missing_traditional.value),
             format_number(s.missing_traditional.half_width),
             format_number(s.missing_proposed.value),
             format_number(s.missing_proposed.half_width), std::to_string(s.hidden_known),
             std::to_string(s.hidden_included)});
    }
    return kOk;
  }
  w.row({"seed", "n", "traditional_size", "proposed_size", "n_f", "has_target",
         "target_in_proposed", "target_in_traditional"});
  auto b = [](bool v) { return std::string(v ? "1" : "0"); };
  for (const auto& t : trials) {
    w.row({std::to_string(t.seed), std::to_string(t.n), std::to_string(t.traditional_size),
           std::to_string(t.proposed_size), std::to_string(t.n_f), b(t.has_target),
           b(t.target_in_proposed), b(t.target_in_traditional)});
  }
  return kOk;
}

int cmd_signaling_trace(const std::string& flow_name, const std::string& abort_gate, bool csv,
                        std::ostream& out) {
  Flow flow;
  try {
    flow = parse_flow(flow_name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const bool preauth = abort_gate != "preauth";
  const bool auth = abort_gate != "auth";
  const bool cac = abort_gate != "cac";
  if (!abort_gate.empty() && preauth && auth && cac) {
    throw UsageError("unknown gate '" + abort_gate + "' (expected preauth, auth or cac)");
  }
  if (flow == Flow::F2M && !auth) throw UsageError("the f2m flow has no authorization gate");
  SignalingTrace trace;
  switch (flow) {
    case Flow::F2M: trace = run_f2m({cac, preauth}); break;
    case Flow::M2F: trace = run_m2f({cac, auth, true, preauth}); break;
    case Flow::F2F: trace = run_f2f({cac, auth, preauth}); break;
  }
  if (csv) {
    write_trace_csv(out, trace);
  } else {
    write_trace_text(out, trace);
  }
  return kOk;
}

int cmd_validate(const std::string& path, const std::vector<std::string>& overrides, bool print,
                 std::ostream& out) {
  const auto config = path.empty() ? parse_config("", overrides) : load_config(path, overrides);
  if (print) {
    write_key_values(out, effective_values(config));
  } else {
    out << "valid\n";
  }
  return kOk;
}

int cmd_topology(const ConfigInput& in, std::optional<std::uint64_t> seed,
                 const std::string& output, std::ostream& out, std::ostream& err) {
  const auto config = in.load();
  const auto topo = generate_topology(config.topology, seed.value_or(config.sim.seed));
  Sink sink(output, out);
  *sink << topology_to_json(topo) << '\n';
  for (const auto& w : topo.warnings()) err << "warning: " << w << '\n';
  return kOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dense femtocell mobility toolkit: traffic model, simulator, neighbor lists"};
  app.name("femtonet");
  app.require_subcommand(1);

  ConfigInput analytic_in, sim_in, sweep_in, ncl_in, topo_in;
  bool csv = false;
  std::optional<double> alpha;
  auto* analytic = app.add_subcommand("analytic", "Solve the closed-form traffic model");
  analytic_in.attach(analytic);
  analytic->add_flag("--csv", csv, "CSV instead of key-value text");
  analytic->add_option("--alpha", alpha, "Override alpha for this solve")->check(CLI::Range(0.0, 1.0));

  std::optional<std::uint64_t> seed;
  std::optional<double> horizon;
  std::string log_path;
  auto* simulate = app.add_subcommand("simulate", "Run one discrete-event simulation");
  sim_in.attach(simulate);
  simulate->add_option("--seed", seed, "Run seed (default sim.seed)");
  simulate->add_option("--horizon", horizon, "Measured horizon in seconds")->check(CLI::PositiveNumber);
  simulate->add_flag("--csv", csv, "CSV instead of key-value text");
  simulate->add_option("--decision-log", log_path, "Write CAC decisions as CSV");

  SweepOptions sweep_opts;
  std::string output;
  auto* sweep = app.add_subcommand("sweep", "Vary one scalar; paired analytic and simulated CSV");
  sweep_in.attach(sweep);
  sweep->add_option("--param", sweep_opts.param, "Config key to vary (e.g. n, traffic.alpha)");
  sweep->add_option("--from", sweep_opts.from, "First value")->required();
  sweep->add_option("--to", sweep_opts.to, "Last value")->required();
  sweep->add_option("--points", sweep_opts.points, "Number of points")->check(CLI::PositiveNumber);
  sweep->add_option("--seeds", sweep_opts.seeds, "Simulation seeds per point (0: analytic only)")
      ->check(CLI::NonNegativeNumber);
  sweep->add_option("--jobs", sweep_opts.jobs, "Parallel runs")->check(CLI::PositiveNumber);
  sweep->add_option("-o,--output", output, "Write CSV to a file");

  NclBenchOptions ncl_opts;
  bool summary = false;
  auto* ncl = app.add_subcommand("ncl-bench", "Monte-Carlo comparison of neighbor cell lists");
  ncl_in.attach(ncl);
  ncl->add_option("--densities", ncl_opts.densities, "FAP counts to evaluate")->delimiter(',');
  ncl->add_option("--seeds", ncl_opts.seeds, "Topologies per density")->check(CLI::PositiveNumber);
  ncl->add_option("--trials", ncl_opts.trials_per_seed, "Handover situations per topology")
      ->check(CLI::PositiveNumber);
  ncl->add_option("--base-seed", ncl_opts.base_seed, "First topology seed");
  ncl->add_option("--jobs", ncl_opts.jobs, "Parallel topologies")->check(CLI::PositiveNumber);
  ncl->add_flag("--summary", summary, "One row per density instead of per trial");
  ncl->add_option("-o,--output", output, "Write CSV to a file");

  std::string flow_name, abort_gate;
  auto* trace = app.add_subcommand("signaling-trace", "Print a handover call flow");
  trace->add_option("--flow", flow_name, "f2m, m2f or f2f")->required();
  trace->add_option("--abort", abort_gate, "Fail a gate: preauth, auth or cac");
  trace->add_flag("--csv", csv, "CSV instead of aligned text");

  std::string validate_path;
  std::vector<std::string> validate_overrides;
  bool print = false;
  auto* validate_cmd = app.add_subcommand("validate", "Check a configuration file");
  validate_cmd->add_option("config", validate_path, "YAML scenario file");
  validate_cmd->add_option("--set", validate_overrides, "Override a key: section.key=value");
  validate_cmd->add_flag("--print", print, "Print every effective value");

  auto* topology = app.add_subcommand("topology", "Generate a scenario topology as JSON");
  topo_in.attach(topology);
  topology->add_option("--seed", seed, "Topology seed (default sim.seed)");
  topology->add_option("-o,--output", output, "Write JSON to a file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    if (*analytic) return cmd_analytic(analytic_in, csv, alpha, out);
    if (*simulate) return cmd_simulate(sim_in, seed, horizon, csv, log_path, out);
    if (*sweep) return cmd_sweep(sweep_in, sweep_opts, output, out);
    if (*ncl) return cmd_ncl_bench(ncl_in, ncl_opts, summary, output, out);
    if (*trace) return cmd_signaling_trace(flow_name, abort_gate, csv, out);
    if (*validate_cmd) return cmd_validate(validate_path, validate_overrides, print, out);
    if (*topology) return cmd_topology(topo_in, seed, output, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ConfigError& e) {
    err << "configuration error:\n";
    for (const auto& p : e.problems()) err << "  " << p << '\n';
    return kDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
  return kUsageError;
}

}  // namespace femtonet::cli
