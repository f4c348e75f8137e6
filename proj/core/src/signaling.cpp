#include "femtonet/signaling.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "femtonet/report.hpp"

namespace femtonet {

EntityKind kind_of(Role role) {
  switch (role) {
    case Role::MS: return EntityKind::MS;
    case Role::SourceFap:
    case Role::TargetFap:
    case Role::NeighborFap: return EntityKind::FAP;
    case Role::FGW: return EntityKind::FGW;
    case Role::CN: return EntityKind::CN;
    case Role::RNC: return EntityKind::RNC;
    case Role::MacroBS: return EntityKind::MacroBS;
  }
  return EntityKind::MS;
}

std::string to_string(Role role) {
  switch (role) {
    case Role::MS: return "MS";
    case Role::SourceFap: return "S-FAP";
    case Role::TargetFap: return "T-FAP";
    case Role::NeighborFap: return "N-FAP";
    case Role::FGW: return "FGW";
    case Role::CN: return "CN";
    case Role::RNC: return "RNC";
    case Role::MacroBS: return "MacroBS";
  }
  return "?";
}

std::string to_string(EntityKind kind) {
  switch (kind) {
    case EntityKind::MS: return "MS";
    case EntityKind::FAP: return "FAP";
    case EntityKind::FGW: return "FGW";
    case EntityKind::CN: return "CN";
    case EntityKind::RNC: return "RNC";
    case EntityKind::MacroBS: return "MacroBS";
  }
  return "?";
}

std::string to_string(Flow flow) {
  switch (flow) {
    case Flow::F2M: return "f2m";
    case Flow::M2F: return "m2f";
    case Flow::F2F: return "f2f";
  }
  return "?";
}

Flow parse_flow(const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "f2m") return Flow::F2M;
  if (t == "m2f") return Flow::M2F;
  if (t == "f2f") return Flow::F2F;
  throw std::invalid_argument("unknown flow '" + text + "' (expected f2m, m2f or f2f)");
}

double SignalingTrace::latency_s() const {
  double total = 0.0;
  for (const auto& s : steps) total += s.delay_s;
  return total;
}

namespace {

struct StepDef {
  Role from;
  Role to;
  const char* label;
};

using R = Role;

const std::vector<StepDef>& f2m_steps() {
  static const std::vector<StepDef> steps = {
      {R::MS, R::SourceFap, "measurement_report"},
      {R::SourceFap, R::MS, "measurement_report_ack"},
      {R::MS, R::MS, "scan_neighbors"},
      {R::SourceFap, R::NeighborFap, "son_configuration"},
      {R::SourceFap, R::MS, "neighbor_cell_list"},
      {R::MS, R::MacroBS, "pre_authentication"},
      {R::SourceFap, R::SourceFap, "handover_decision"},
      {R::SourceFap, R::FGW, "ho_request"},
      {R::FGW, R::CN, "ho_request"},
      {R::CN, R::RNC, "ho_request"},
      {R::RNC, R::MacroBS, "ho_request"},
      {R::MacroBS, R::MacroBS, "cac_rrc"},
      {R::MacroBS, R::RNC, "ho_response"},
      {R::RNC, R::CN, "ho_response"},
      {R::CN, R::FGW, "ho_response"},
      {R::FGW, R::SourceFap, "ho_response"},
      {R::CN, R::RNC, "link_setup_request"},
      {R::RNC, R::MacroBS, "radio_link_setup"},
      {R::MacroBS, R::RNC, "radio_link_setup_response"},
      {R::RNC, R::CN, "link_setup_response"},
      {R::CN, R::FGW, "path_switch"},
      {R::SourceFap, R::MacroBS, "data_forwarding"},
      {R::MS, R::MacroBS, "channel_establish_request"},
      {R::MacroBS, R::MS, "channel_establish_response"},
      {R::MS, R::SourceFap, "detach"},
      {R::MS, R::MacroBS, "synchronization"},
      {R::MacroBS, R::MS, "synchronization_ack"},
      {R::MS, R::MacroBS, "ho_complete"},
      {R::MacroBS, R::CN, "ho_complete"},
      {R::CN, R::FGW, "ho_complete"},
      {R::FGW, R::SourceFap, "link_delete"},
      {R::SourceFap, R::SourceFap, "release_resources"},
      {R::SourceFap, R::FGW, "link_delete_ack"},
  };
  return steps;
}

const std::vector<StepDef>& m2f_steps() {
  static const std::vector<StepDef> steps = {
      {R::MS, R::MacroBS, "measurement_report"},
      {R::MacroBS, R::MS, "measurement_report_ack"},
      {R::MacroBS, R::NeighborFap, "son_configuration"},
      {R::MacroBS, R::MS, "neighbor_cell_list"},
      {R::MS, R::TargetFap, "pre_authentication"},
      {R::MS, R::MS, "handover_decision"},
      {R::MacroBS, R::RNC, "ho_request"},
      {R::RNC, R::CN, "ho_request"},
      {R::CN, R::FGW, "ho_request"},
      {R::FGW, R::TargetFap, "ho_request"},
      {R::TargetFap, R::FGW, "authorization_request"},
      {R::FGW, R::TargetFap, "authorization_response"},
      {R::TargetFap, R::TargetFap, "cac_rrc_interference"},
      {R::TargetFap, R::FGW, "ho_response"},
      {R::FGW, R::CN, "ho_response"},
      {R::CN, R::RNC, "ho_response"},
      {R::RNC, R::MacroBS, "ho_response"},
      {R::FGW, R::TargetFap, "link_setup_request"},
      {R::TargetFap, R::FGW, "link_setup_response"},
      {R::FGW, R::CN, "path_update"},
      {R::CN, R::FGW, "path_update_ack"},
      {R::FGW, R::TargetFap, "link_established"},
      {R::MacroBS, R::TargetFap, "data_forwarding"},
      {R::MS, R::TargetFap, "channel_establish_request"},
      {R::TargetFap, R::MS, "channel_establish_response"},
      {R::MS, R::MacroBS, "detach"},
      {R::MS, R::TargetFap, "synchronization"},
      {R::TargetFap, R::MS, "synchronization_ack"},
      {R::MS, R::TargetFap, "ho_complete"},
      {R::TargetFap, R::FGW, "ho_complete"},
      {R::FGW, R::RNC, "ho_complete"},
      {R::RNC, R::MacroBS, "link_delete"},
      {R::MacroBS, R::MacroBS, "release_resources"},
      {R::MacroBS, R::RNC, "link_delete_ack"},
  };
  return steps;
}

const std::vector<StepDef>& f2f_steps() {
  static const std::vector<StepDef> steps = {
      {R::MS, R::SourceFap, "measurement_report"},
      {R::SourceFap, R::MS, "measurement_report_ack"},
      {R::MS, R::MS, "scan_neighbors"},
      {R::SourceFap, R::NeighborFap, "son_configuration"},
      {R::SourceFap, R::MS, "neighbor_cell_list"},
      {R::MS, R::TargetFap, "pre_authentication"},
      {R::SourceFap, R::SourceFap, "handover_decision"},
      {R::SourceFap, R::FGW, "ho_request"},
      {R::FGW, R::TargetFap, "ho_request"},
      {R::TargetFap, R::FGW, "authorization_request"},
      {R::FGW, R::TargetFap, "authorization_response"},
      {R::TargetFap, R::TargetFap, "cac_rrc"},
      {R::TargetFap, R::FGW, "ho_response"},
      {R::FGW, R::SourceFap, "ho_response"},
      {R::FGW, R::TargetFap, "link_setup_request"},
      {R::TargetFap, R::FGW, "link_setup_response"},
      {R::FGW, R::TargetFap, "link_established"},
      {R::SourceFap, R::TargetFap, "data_forwarding"},
      {R::MS, R::TargetFap, "channel_establish_request"},
      {R::TargetFap, R::MS, "channel_establish_response"},
      {R::MS, R::SourceFap, "detach"},
      {R::MS, R::TargetFap, "synchronization"},
      {R::TargetFap, R::MS, "synchronization_ack"},
      {R::MS, R::TargetFap, "ho_complete"},
      {R::TargetFap, R::FGW, "ho_complete"},
      {R::FGW, R::TargetFap, "ho_complete_ack"},
      {R::FGW, R::SourceFap, "link_delete"},
      {R::SourceFap, R::SourceFap, "release_resources"},
      {R::SourceFap, R::FGW, "link_delete_ack"},
  };
  return steps;
}

const std::vector<StepDef>& steps_for(Flow flow) {
  switch (flow) {
    case Flow::F2M: return f2m_steps();
    case Flow::M2F: return m2f_steps();
    case Flow::F2F: return f2f_steps();
  }
  return f2m_steps();
}

double step_delay(const StepDef& s, const SignalingDelays& d) {
  if (s.from == s.to) return d.self_s;
  if (s.from == Role::MS || s.to == Role::MS) return d.air_s;
  return d.backhaul_s;
}

struct Gate {
  int step;
  bool ok;
  const char* reason;
};

// Emits steps in order, stopping after the first failing gate's step.
SignalingTrace execute(Flow flow, std::initializer_list<Gate> gates, const SignalingDelays& delays) {
  SignalingTrace trace;
  trace.flow = flow;
  const auto& defs = steps_for(flow);
  for (std::size_t i = 0; i < defs.size(); ++i) {
    const int index = static_cast<int>(i) + 1;
    trace.steps.push_back({index, defs[i].from, defs[i].to, defs[i].label, step_delay(defs[i], delays)});
    for (const auto& g : gates) {
      if (g.step == index && !g.ok) {
        trace.outcome = TraceOutcome::Aborted;
        trace.abort_reason = g.reason;
        trace.abort_step = index;
        return trace;
      }
    }
  }
  return trace;
}

}  // namespace

int flow_length(Flow flow) { return static_cast<int>(steps_for(flow).size()); }

SignalingTrace run_f2m(const F2mContext& ctx, const SignalingDelays& delays) {
  return execute(Flow::F2M, {{6, ctx.preauth_ok, "preauth"}, {12, ctx.cac_ok, "cac"}}, delays);
}

SignalingTrace run_m2f(const M2fContext& ctx, const SignalingDelays& delays) {
  return execute(Flow::M2F,
                 {{5, ctx.preauth_ok, "preauth"},
                  {12, ctx.authorization_ok, "auth"},
                  {13, ctx.cac_ok && ctx.interference_ok, "cac"}},
                 delays);
}

SignalingTrace run_f2f(const F2fContext& ctx, const SignalingDelays& delays) {
  return execute(Flow::F2F,
                 {{6, ctx.preauth_ok, "preauth"},
                  {11, ctx.authorization_ok, "auth"},
                  {12, ctx.cac_ok, "cac"}},
                 delays);
}

SignalingCost signaling_cost(const SignalingTrace& trace) {
  SignalingCost cost;
  for (const auto& s : trace.steps) {
    if (!s.is_message()) continue;
    ++cost.messages_total;
    ++cost.per_entity[kind_of(s.from)];
    ++cost.per_entity[kind_of(s.to)];
  }
  return cost;
}

void write_trace_text(std::ostream& out, const SignalingTrace& trace) {
  char line[160];
  for (const auto& s : trace.steps) {
    std::snprintf(line, sizeof line, "%3d  %-8s -> %-8s  %s", s.index, to_string(s.from).c_str(),
                  to_string(s.to).c_str(), s.label.c_str());
    out << line << '\n';
  }
}

void write_trace_csv(std::ostream& out, const SignalingTrace& trace) {
  CsvWriter csv(out);
  csv.row({"index", "from", "to", "label"});
  for (const auto& s : trace.steps) {
    csv.row({std::to_string(s.index), to_string(s.from), to_string(s.to), s.label});
  }
}

}  // namespace femtonet
