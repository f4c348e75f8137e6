#include "femtonet/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <queue>
#include <random>
#include <unordered_map>
#include <variant>

#include "femtonet/error.hpp"

namespace femtonet {

bool MetricsReport::conserved() const {
  for (const auto& per_class : conservation) {
    for (const auto& c : per_class) {
      if (!c.balanced()) return false;
    }
  }
  return true;
}

namespace {

constexpr std::uint64_t kSimStream = 10;
constexpr std::uint64_t kTopologyStream = 11;

enum class EventKind { FemtoAreaArrival, MacroAreaArrival, SojournEnd, MacroHandoverIn };

struct Event {
  double time = 0.0;
  std::uint64_t seq = 0;
  EventKind kind = EventKind::SojournEnd;
  SessionId session = 0;
  // MacroHandoverIn carries the class and lineage of the call to re-create.
  int cls = 0;
  bool counted = false;

  bool operator>(const Event& o) const {
    if (time != o.time) return time > o.time;
    return seq > o.seq;
  }
};

struct Session {
  SessionId id = 0;
  int cls = 0;
  CallOrigin origin = CallOrigin::FemtoArea;
  std::optional<FapId> fap;  // empty: on the macrocell
  Point position;
  UserId user = 0;
  int handovers = 0;
  // Admitted as a new call after warm-up; its drop counts as forced termination.
  bool counted = false;
};

// Resident user of an FAP, so closed FAPs admit their own household's calls.
UserId resident_of(const Topology& topo, FapId fap) {
  const auto& f = topo.fap(fap);
  if (!f.authorized_users.empty()) return *f.authorized_users.begin();
  return 0;
}

class Simulator {
 public:
  Simulator(const ScenarioConfig& config, std::uint64_t seed, const RunOptions& options)
      : config_(config),
        options_(options),
        topology_(generate_topology(config.topology, derive_seed(seed, kTopologyStream))),
        radio_(topology_, config.radio),
        rng_(derive_seed(seed, kSimStream)),
        thresholds_(cac_thresholds(config)),
        delays_(signaling_delays(config)),
        params_(traffic_params(config)),
        probs_(handover_probabilities(params_)) {
    channelized_ = config.cac.macro_model == MacroModel::Channelized;
    if (channelized_) {
      const int n_ch = resolved_n_ch(config);
      const int s_ch = resolved_s_ch(config);
      ledger_ = MacroLedger(n_ch + s_ch, s_ch);
      classes_[0] = {"non_adaptive", false, 1, 1};
      classes_[1] = {"adaptive", false, 1, 1};
    } else {
      ledger_ = MacroLedger(config.cac.capacity_kbps, 0);
      classes_[0] = non_adaptive_class(config);
      classes_[1] = adaptive_class(config);
    }
    slots_.assign(topology_.faps().size(), 0);
    const double horizon = options.horizon_s.value_or(config.sim.horizon_s);
    warmup_ = config.sim.warmup_fraction * horizon;
    end_ = warmup_ + horizon;
  }

  MetricsReport run() {
    if (params_.lambda_f_o > 0.0 && !topology_.faps().empty()) {
      schedule_arrival(EventKind::FemtoAreaArrival, 0.0);
    }
    if (params_.lambda_m_o > 0.0) schedule_arrival(EventKind::MacroAreaArrival, 0.0);

    while (!queue_.empty()) {
      const Event e = queue_.top();
      if (e.time > end_) break;
      queue_.pop();
      advance_clock(e.time);
      dispatch(e);
      ++report_.events;
      if (report_.events % static_cast<std::uint64_t>(config_.sim.check_interval) == 0) {
        check_ledger();
      }
    }
    advance_clock(end_);
    check_ledger();
    finish();
    return report_;
  }

 private:
  // ---- clock and scheduling ----

  void advance_clock(double t) {
    const double from = std::max(now_, warmup_);
    if (t > from) macro_call_seconds_ += static_cast<double>(macro_calls_) * (t - from);
    now_ = t;
  }

  bool measuring() const { return now_ >= warmup_; }

  double exp_sample(double rate) {
    if (rate <= 0.0) return std::numeric_limits<double>::infinity();
    return std::exponential_distribution<double>(rate)(rng_);
  }

  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }

  void push(Event e) {
    e.seq = seq_++;
    queue_.push(e);
  }

  void schedule_arrival(EventKind kind, double from) {
    const double rate =
        kind == EventKind::FemtoAreaArrival ? params_.lambda_f_o : params_.lambda_m_o;
    Event e;
    e.time = from + exp_sample(rate);
    e.kind = kind;
    push(e);
  }

  // A sojourn lasts Exp(eta + mu); its outcome is drawn when it ends.
  void schedule_next(const Session& s) {
    const double eta = s.fap ? params_.eta_f : params_.eta_m;
    Event e;
    e.session = s.id;
    e.time = now_ + exp_sample(eta + params_.mu);
    e.kind = EventKind::SojournEnd;
    push(e);
  }

  void dispatch(const Event& e) {
    switch (e.kind) {
      case EventKind::FemtoAreaArrival:
        schedule_arrival(EventKind::FemtoAreaArrival, now_);
        femto_area_arrival();
        break;
      case EventKind::MacroAreaArrival:
        schedule_arrival(EventKind::MacroAreaArrival, now_);
        macro_area_arrival();
        break;
      case EventKind::SojournEnd: sojourn_end(e.session); break;
      case EventKind::MacroHandoverIn: macro_handover_in(e); break;
    }
  }

  // ---- helpers ----

  Conservation& tally(const Session& s) {
    return report_.conservation[s.cls][static_cast<std::size_t>(s.origin)];
  }

  std::size_t slot_index(FapId fap) const { return fap.value; }

  int free_slots(FapId fap) const {
    return topology_.fap(fap).capacity - slots_[slot_index(fap)];
  }

  int draw_class() { return unit() < config_.cac.adaptive_share ? 1 : 0; }

  Point macro_area_position() {
    const auto& m = topology_.macro();
    Point p = uniform_in_disk(rng_, m.position, m.radius_m);
    for (int tries = 0; tries < 1000 && topology_.in_femto_coverage(p); ++tries) {
      p = uniform_in_disk(rng_, m.position, m.radius_m);
    }
    return p;
  }

  FapId random_fap() {
    std::uniform_int_distribution<std::size_t> pick(0, topology_.faps().size() - 1);
    return topology_.faps()[pick(rng_)].id;
  }

  // The MS walks into one of the serving FAP's nearest neighbours.
  FapId neighbor_target(FapId serving) {
    const auto& sf = topology_.fap(serving);
    const auto pool = static_cast<std::size_t>(config_.sim.f2f_neighbor_pool);
    double radius = 4.0 * sf.radius_m;
    std::vector<std::pair<double, FapId>> near;
    while (true) {
      near.clear();
      for (const auto id : topology_.faps_within(sf.position, radius)) {
        if (id != serving) near.emplace_back(distance(sf.position, topology_.fap(id).position), id);
      }
      if (near.size() >= pool || near.size() + 1 == topology_.faps().size()) break;
      radius *= 2.0;
    }
    std::sort(near.begin(), near.end());
    const std::size_t k = std::min(pool, near.size());
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    return near[pick(rng_)].second;
  }

  double macro_shadow() {
    const double sigma = config_.radio.shadow_sigma_db;
    if (sigma <= 0.0) return 0.0;
    return std::normal_distribution<double>(0.0, sigma)(rng_);
  }

  void attach_femto(Session& s, FapId fap) {
    ++slots_[slot_index(fap)];
    s.fap = fap;
  }

  void detach(Session& s) {
    if (s.fap) {
      --slots_[slot_index(*s.fap)];
      s.fap.reset();
    } else if (ledger_.contains(s.id)) {
      release_call(ledger_, s.id, config_.cac.restore_qos);
      --macro_calls_;
    }
  }

  void attach_macro(Session& s, const CacDecision& d) {
    apply_degradations(ledger_, d.degradations);
    if (measuring()) report_.degraded_calls += d.degradations.size();
    ledger_.add(s.id, classes_[s.cls], d.granted);
    s.fap.reset();
    ++macro_calls_;
  }

  void log(const Session& s, const char* kind, const CacDecision& d) {
    if (!options_.decision_log) return;
    *options_.decision_log << format_number(now_) << ',' << s.id << ',' << kind << ','
                           << to_string(d.outcome) << ',' << d.granted << ','
                           << d.degradations.size() << '\n';
  }

  void record_trace(const SignalingTrace& t) {
    auto& f = report_.flows[static_cast<std::size_t>(t.flow)];
    if (!measuring()) return;
    if (t.completed()) {
      ++f.completed;
    } else {
      ++f.aborted;
    }
    f.messages += static_cast<std::uint64_t>(signaling_cost(t).messages_total);
    f.latency_s += t.latency_s();
  }

  void complete_handover(Session& s, const SignalingTrace& t, Flow expected) {
    record_trace(t);
    if (!t.completed() || t.flow != expected) ++report_.linkage_violations;
    ++s.handovers;
  }

  // Per-event resource accounting: femto requests are per FAP asked,
  // macro requests once per handover event.
  struct HandoverTally {
    bool macro_requested = false;
    bool macro_admitted = false;

    void note(const CacDecision& d) {
      macro_requested = macro_requested || d.macro_requested;
      macro_admitted = macro_admitted || d.outcome == CacOutcome::AdmitMacro;
    }
  };

  void count_femto_handover_request(const CacDecision& d) {
    if (!measuring() || !d.femto_requested) return;
    ++femto_ho_requests_;
    if (d.femto_refused) ++femto_ho_refusals_;
  }

  void close_tally(const HandoverTally& t) {
    if (!measuring() || !t.macro_requested) return;
    ++macro_ho_requests_;
    if (!t.macro_admitted) ++macro_ho_refusals_;
  }

  void drop(Session& s) {
    ++tally(s).dropped;
    if (s.counted) ++forced_drops_;
    sessions_.erase(s.id);
  }

  // ---- arrivals ----

  Session& new_session(CallOrigin origin, int cls) {
    Session s;
    s.id = next_id_++;
    s.cls = cls;
    s.origin = origin;
    auto& ref = sessions_[s.id] = s;
    ++tally(ref).arrivals;
    return ref;
  }

  void admit_new_call(Session& s, const CacDecision& d) {
    if (measuring()) {
      if (d.femto_requested) {
        ++femto_new_requests_;
        if (d.femto_refused) ++femto_new_refusals_;
      }
      if (d.macro_requested) {
        ++macro_new_requests_;
        if (d.macro_refused) ++macro_new_refusals_;
      }
    }
    log(s, "new", d);
    switch (d.outcome) {
      case CacOutcome::AdmitFemto: attach_femto(s, *d.fap); break;
      case CacOutcome::AdmitMacro: attach_macro(s, d); break;
      default:
        ++tally(s).blocked;
        sessions_.erase(s.id);
        return;
    }
    if (measuring()) {
      s.counted = true;
      ++admitted_new_;
    }
    schedule_next(s);
  }

  void femto_area_arrival() {
    auto& s = new_session(CallOrigin::FemtoArea, draw_class());
    const FapId fap = random_fap();
    s.position = uniform_in_disk(rng_, topology_.fap(fap).position, topology_.fap(fap).radius_m);
    s.user = resident_of(topology_, fap);
    FemtoCandidate c{fap, radio_.fap_snir_db(s.position, fap), free_slots(fap)};
    std::optional<FemtoCandidate> candidate;
    if (topology_.fap(fap).admits(s.user)) candidate = c;
    admit_new_call(s, admit_new(classes_[s.cls], candidate, ledger_, thresholds_));
  }

  void macro_area_arrival() {
    auto& s = new_session(CallOrigin::MacroArea, draw_class());
    s.position = macro_area_position();
    s.user = next_user_++;
    admit_new_call(s, admit_new(classes_[s.cls], std::nullopt, ledger_, thresholds_));
  }

  // Incoming macro-to-macro handover from a neighbouring cell.
  void macro_handover_in(const Event& e) {
    auto& s = new_session(CallOrigin::MacroHandoverIn, e.cls);
    s.counted = e.counted;
    s.position = macro_area_position();
    s.user = next_user_++;
    const auto d = admit_femto_originated(classes_[s.cls], std::nullopt, ledger_, thresholds_);
    HandoverTally tally_event;
    tally_event.note(d);
    close_tally(tally_event);
    log(s, "m2m_in", d);
    if (d.outcome == CacOutcome::AdmitMacro) {
      attach_macro(s, d);
      schedule_next(s);
    } else {
      drop(s);
    }
  }

  void call_end(Session& s) {
    if (measuring() && !s.fap) ++macro_departures_;
    detach(s);
    ++tally(s).ended;
    sessions_.erase(s.id);
  }

  // ---- handovers ----

  // Handover probabilities are per sojourn; the remainder completes the call.
  void sojourn_end(SessionId id) {
    auto it = sessions_.find(id);
    if (it == sessions_.end()) return;
    auto& s = it->second;
    const double u = unit();
    if (s.fap) {
      const double scale = std::max(1.0, probs_.ff + probs_.fm);
      if (u < probs_.ff / scale && topology_.faps().size() > 1) {
        femto_to_femto(s);
      } else if (u < (probs_.ff + probs_.fm) / scale) {
        femto_to_macro(s);
      } else {
        call_end(s);
      }
    } else {
      const double scale = std::max(1.0, probs_.mm + probs_.mf);
      if (u < probs_.mf / scale && !topology_.faps().empty()) {
        macro_to_femto(s);
      } else if (u < (probs_.mm + probs_.mf) / scale) {
        macro_to_macro(s);
      } else {
        call_end(s);
      }
    }
  }

  // Macro with QoS degradation; the common fallback of femto-originated handovers.
  bool try_macro(Session& s, HandoverTally& t) {
    const auto d = admit_femto_originated(classes_[s.cls], std::nullopt, ledger_, thresholds_);
    t.note(d);
    log(s, "f2m", d);
    const auto trace = run_f2m({d.outcome == CacOutcome::AdmitMacro, true}, delays_);
    if (d.outcome != CacOutcome::AdmitMacro) {
      record_trace(trace);
      return false;
    }
    detach(s);
    attach_macro(s, d);
    complete_handover(s, trace, Flow::F2M);
    return true;
  }

  void femto_to_macro(Session& s) {
    if (measuring()) ++report_.flows[static_cast<std::size_t>(Flow::F2M)].attempts;
    s.position = macro_area_position();
    HandoverTally t;
    const bool ok = try_macro(s, t);
    close_tally(t);
    if (!ok) {
      detach(s);
      drop(s);
      return;
    }
    schedule_next(s);
  }

  void femto_to_femto(Session& s) {
    if (measuring()) ++report_.flows[static_cast<std::size_t>(Flow::F2F)].attempts;
    const FapId serving = *s.fap;
    const FapId target = neighbor_target(serving);
    const auto& tf = topology_.fap(target);
    s.position = uniform_in_disk(rng_, tf.position, tf.radius_m);

    const auto known = known_locations(topology_, serving);
    const auto measurements = measure(radio_, s.position, s.user,
                                      config_.neighbor_list.scan_range_m, known, serving);
    const auto list = build_list_fap_connected(measurements, serving,
                                               topology_.fap(serving).frequency_channel, known,
                                               config_.neighbor_list.thresholds);
    if (measuring()) {
      list_sizes_.push_back(static_cast<double>(list.entries.size()));
      if (tf.admits(s.user)) {
        ++target_checks_;
        if (!list.contains(target)) ++target_missing_;
      }
    }

    HandoverTally t;
    bool first = true;
    for (const auto& entry : list.entries) {
      const FemtoCandidate c{entry.fap, radio_.fap_snir_db(s.position, entry.fap),
                             free_slots(entry.fap)};
      if (first && measuring()) {
        ++alpha_trials_;
        if (c.snir_db >= thresholds_.gamma2_db) ++alpha_hits_;
      }
      first = false;
      const auto d = admit_femto_originated(classes_[s.cls], c, ledger_, thresholds_);
      t.note(d);
      count_femto_handover_request(d);
      log(s, "f2f", d);
      if (d.outcome == CacOutcome::AdmitFemto) {
        const auto trace = run_f2f({true, true, true}, delays_);
        detach(s);
        attach_femto(s, entry.fap);
        complete_handover(s, trace, Flow::F2F);
        close_tally(t);
        schedule_next(s);
        return;
      }
      if (d.outcome == CacOutcome::AdmitMacro) {
        const auto trace = run_f2m({true, true}, delays_);
        detach(s);
        attach_macro(s, d);
        complete_handover(s, trace, Flow::F2M);
        close_tally(t);
        schedule_next(s);
        return;
      }
      record_trace(run_f2f({false, true, true}, delays_));
    }
    if (first && measuring()) ++alpha_trials_;
    const bool ok = try_macro(s, t);
    close_tally(t);
    if (!ok) {
      detach(s);
      drop(s);
      return;
    }
    schedule_next(s);
  }

  void macro_to_femto(Session& s) {
    if (measuring()) ++report_.flows[static_cast<std::size_t>(Flow::M2F)].attempts;
    const FapId target = random_fap();
    const auto& tf = topology_.fap(target);
    s.position = uniform_in_disk(rng_, tf.position, tf.radius_m);
    const double macro_snir = radio_.macro_snir_db(s.position, macro_shadow());

    // Without a serving FAP the MS learns locations from the strong FAPs it hears.
    const auto all = measure(radio_, s.position, s.user, config_.neighbor_list.scan_range_m, {});
    FapSet known;
    for (const auto& m : all) {
      if (m.rssi_dbm < config_.neighbor_list.thresholds.strong_dbm) continue;
      known.insert(m.fap);
      const auto more = coordination_set(topology_, m.fap);
      known.insert(more.begin(), more.end());
    }
    const auto measurements =
        measure(radio_, s.position, s.user, config_.neighbor_list.scan_range_m, known);
    const auto list =
        build_list_macro_connected(measurements, known, config_.neighbor_list.thresholds);
    if (measuring()) list_sizes_.push_back(static_cast<double>(list.entries.size()));

    for (const auto& entry : list.entries) {
      const FemtoCandidate c{entry.fap, radio_.fap_snir_db(s.position, entry.fap),
                             free_slots(entry.fap)};
      const auto d = admit_macro_originated(c, macro_snir, thresholds_);
      count_femto_handover_request(d);
      log(s, "m2f", d);
      if (d.outcome == CacOutcome::AdmitFemto) {
        const auto trace = run_m2f({true, true, true, true}, delays_);
        if (measuring()) ++macro_outbound_;
        detach(s);
        attach_femto(s, entry.fap);
        complete_handover(s, trace, Flow::M2F);
        schedule_next(s);
        return;
      }
      if (d.femto_requested) record_trace(run_m2f({false, true, true, true}, delays_));
    }
    // Offload failed: the call simply stays on the macrocell.
    schedule_next(s);
  }

  void macro_to_macro(Session& s) {
    if (measuring()) {
      ++report_.m2m_handovers;
      ++macro_outbound_;
    }
    // The single modelled cell stands in for its neighbours: the call leaves
    // and an equivalent call enters later as an incoming handover.
    const double delay = config_.sim.m2m_mirror_delay_s;
    Event in;
    in.time = now_ + (delay > 0.0 ? exp_sample(1.0 / delay) : 0.0);
    in.kind = EventKind::MacroHandoverIn;
    in.cls = s.cls;
    in.counted = s.counted;
    push(in);
    detach(s);
    ++tally(s).handed_out;
    sessions_.erase(s.id);
  }

  // ---- bookkeeping ----

  void check_ledger() {
    ++report_.ledger_checks;
    Kbps sum = 0;
    std::size_t on_macro = 0;
    for (const auto& [id, s] : sessions_) {
      if (s.fap) continue;
      if (!ledger_.contains(id)) {
        ++report_.ledger_violations;
        continue;
      }
      sum += ledger_.grant(id).granted;
      ++on_macro;
    }
    if (sum != ledger_.occupied() || on_macro != ledger_.size() ||
        ledger_.occupied() > ledger_.capacity()) {
      ++report_.ledger_violations;
    }
  }

  void finish() {
    for (const auto& [id, s] : sessions_) ++tally(s).active;
    report_.P_B_m = proportion(macro_new_refusals_, macro_new_requests_);
    report_.P_B_f = proportion(femto_new_refusals_, femto_new_requests_);
    report_.P_D_m = proportion(macro_ho_refusals_, macro_ho_requests_);
    report_.P_D_f = proportion(femto_ho_refusals_, femto_ho_requests_);
    report_.forced_termination = proportion(forced_drops_, admitted_new_);
    report_.alpha = proportion(alpha_hits_, alpha_trials_);
    report_.missing_target = proportion(target_missing_, target_checks_);
    report_.neighbor_list_size = summarize(list_sizes_);
    report_.macro_channel_release_rate =
        macro_call_seconds_ > 0.0
            ? static_cast<double>(macro_departures_ + macro_outbound_) / macro_call_seconds_
            : 0.0;
  }

  const ScenarioConfig& config_;
  RunOptions options_;
  Topology topology_;
  RadioEnvironment radio_;
  std::mt19937_64 rng_;
  CacThresholds thresholds_;
  SignalingDelays delays_;
  TrafficParams params_;
  HandoverProbabilities probs_;
  bool channelized_ = false;
  MacroLedger ledger_;
  std::array<TrafficClass, kClassCount> classes_;
  std::vector<int> slots_;

  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue_;
  std::unordered_map<SessionId, Session> sessions_;
  std::uint64_t seq_ = 0;
  SessionId next_id_ = 1;
  UserId next_user_ = 1u << 30;
  double now_ = 0.0;
  double warmup_ = 0.0;
  double end_ = 0.0;

  MetricsReport report_;
  std::int64_t macro_calls_ = 0;
  double macro_call_seconds_ = 0.0;
  std::uint64_t macro_departures_ = 0;
  std::uint64_t macro_outbound_ = 0;
  std::uint64_t macro_new_requests_ = 0, macro_new_refusals_ = 0;
  std::uint64_t femto_new_requests_ = 0, femto_new_refusals_ = 0;
  std::uint64_t macro_ho_requests_ = 0, macro_ho_refusals_ = 0;
  std::uint64_t femto_ho_requests_ = 0, femto_ho_refusals_ = 0;
  std::uint64_t admitted_new_ = 0, forced_drops_ = 0;
  std::uint64_t alpha_trials_ = 0, alpha_hits_ = 0;
  std::uint64_t target_checks_ = 0, target_missing_ = 0;
  std::vector<double> list_sizes_;
};

}  // namespace

MetricsReport run_simulation(const ScenarioConfig& config, std::uint64_t seed,
                             const RunOptions& options) {
  require_valid(config);
  Simulator sim(config, seed, options);
  return sim.run();
}

namespace {

std::string estimate_text(const Estimate& e) {
  if (!e.defined) return "undefined";
  return format_number(e.value) + " +- " + format_number(e.half_width) + " (" +
         std::to_string(e.successes) + "/" + std::to_string(e.trials) + ")";
}

std::string estimate_value(const Estimate& e) { return e.defined ? format_number(e.value) : ""; }
std::string estimate_hw(const Estimate& e) { return e.defined ? format_number(e.half_width) : ""; }

}  // namespace

KeyValues report_values(const MetricsReport& r) {
  KeyValues kv = {
      {"P_B_m", estimate_text(r.P_B_m)},
      {"P_D_m", estimate_text(r.P_D_m)},
      {"P_B_f", estimate_text(r.P_B_f)},
      {"P_D_f", estimate_text(r.P_D_f)},
      {"forced_termination", estimate_text(r.forced_termination)},
      {"alpha_measured", estimate_text(r.alpha)},
      {"missing_target_rate", estimate_text(r.missing_target)},
      {"neighbor_list_size_mean", format_number(r.neighbor_list_size.mean)},
      {"neighbor_list_samples", std::to_string(r.neighbor_list_size.count)},
      {"macro_channel_release_rate", format_number(r.macro_channel_release_rate)},
      {"m2m_handovers", std::to_string(r.m2m_handovers)},
      {"degraded_calls", std::to_string(r.degraded_calls)},
  };
  for (auto f : {Flow::F2M, Flow::M2F, Flow::F2F}) {
    const auto& s = r.flow(f);
    const auto name = to_string(f);
    kv.emplace_back(name + "_attempts", std::to_string(s.attempts));
    kv.emplace_back(name + "_completed", std::to_string(s.completed));
    kv.emplace_back(name + "_aborted", std::to_string(s.aborted));
    kv.emplace_back(name + "_messages_mean", format_number(s.mean_messages()));
  }
  kv.emplace_back("events", std::to_string(r.events));
  kv.emplace_back("ledger_violations", std::to_string(r.ledger_violations));
  kv.emplace_back("conserved", r.conserved() ? "true" : "false");
  return kv;
}

std::vector<std::string> report_csv_header() {
  return {"sim_P_B_m",          "sim_P_B_m_hw",        "sim_P_D_m",       "sim_P_D_m_hw",
          "sim_P_B_f",          "sim_P_B_f_hw",        "sim_P_D_f",       "sim_P_D_f_hw",
          "sim_forced_termination", "sim_forced_termination_hw", "sim_alpha",
          "sim_missing_target", "sim_ncl_size_mean",   "sim_macro_release_rate",
          "sim_f2m_completed",  "sim_m2f_completed",   "sim_f2f_completed", "sim_m2m_handovers"};
}

std::vector<std::string> report_csv_row(const MetricsReport& r) {
  return {estimate_value(r.P_B_m),
          estimate_hw(r.P_B_m),
          estimate_value(r.P_D_m),
          estimate_hw(r.P_D_m),
          estimate_value(r.P_B_f),
          estimate_hw(r.P_B_f),
          estimate_value(r.P_D_f),
          estimate_hw(r.P_D_f),
          estimate_value(r.forced_termination),
          estimate_hw(r.forced_termination),
          estimate_value(r.alpha),
          estimate_value(r.missing_target),
          format_number(r.neighbor_list_size.mean),
          format_number(r.macro_channel_release_rate),
          std::to_string(r.flow(Flow::F2M).completed),
          std::to_string(r.flow(Flow::M2F).completed),
          std::to_string(r.flow(Flow::F2F).completed),
          std::to_string(r.m2m_handovers)};
}

}  // namespace femtonet
