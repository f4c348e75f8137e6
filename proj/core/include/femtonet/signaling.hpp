#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace femtonet {

enum class EntityKind { MS, FAP, FGW, CN, RNC, MacroBS };

/// Participants of a handover. FAP appears in three roles.
enum class Role { MS, SourceFap, TargetFap, NeighborFap, FGW, CN, RNC, MacroBS };

EntityKind kind_of(Role role);
std::string to_string(Role role);
std::string to_string(EntityKind kind);

enum class Flow { F2M, M2F, F2F };
std::string to_string(Flow flow);
/// Accepts f2m, m2f, f2f (case-insensitive). Throws std::invalid_argument.
Flow parse_flow(const std::string& text);

struct SignalingStep {
  int index = 0;
  Role from = Role::MS;
  Role to = Role::MS;
  std::string label;
  double delay_s = 0.0;

  bool is_message() const { return from != to; }
};

enum class TraceOutcome { Completed, Aborted };

struct SignalingTrace {
  Flow flow = Flow::F2M;
  std::vector<SignalingStep> steps;
  TraceOutcome outcome = TraceOutcome::Completed;
  std::string abort_reason;
  int abort_step = 0;

  bool completed() const { return outcome == TraceOutcome::Completed; }
  double latency_s() const;
};

struct SignalingDelays {
  double air_s = 0.001;
  double backhaul_s = 0.005;
  double self_s = 0.0;
};

struct F2mContext {
  bool cac_ok = true;
  bool preauth_ok = true;
};

struct M2fContext {
  bool cac_ok = true;
  bool authorization_ok = true;
  bool interference_ok = true;
  bool preauth_ok = true;
};

struct F2fContext {
  bool cac_ok = true;
  bool authorization_ok = true;
  bool preauth_ok = true;
};

SignalingTrace run_f2m(const F2mContext& ctx, const SignalingDelays& delays = {});
SignalingTrace run_m2f(const M2fContext& ctx, const SignalingDelays& delays = {});
SignalingTrace run_f2f(const F2fContext& ctx, const SignalingDelays& delays = {});

/// Number of steps in the completed flow.
int flow_length(Flow flow);

struct SignalingCost {
  int messages_total = 0;
  std::map<EntityKind, int> per_entity;
};

SignalingCost signaling_cost(const SignalingTrace& trace);

/// One line per step: index, from, to, label. No header.
void write_trace_text(std::ostream& out, const SignalingTrace& trace);
void write_trace_csv(std::ostream& out, const SignalingTrace& trace);

}  // namespace femtonet
