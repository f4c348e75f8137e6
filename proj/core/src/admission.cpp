#include "femtonet/admission.hpp"

#include <algorithm>
#include <stdexcept>

#include "femtonet/error.hpp"

namespace femtonet {

MacroLedger::MacroLedger(Kbps capacity, Kbps handover_reserve)
    : capacity_(capacity), handover_reserve_(handover_reserve) {
  if (capacity < 0 || handover_reserve < 0 || handover_reserve > capacity) {
    throw std::invalid_argument("invalid macro ledger capacity");
  }
}

void MacroLedger::add(SessionId id, const TrafficClass& cls, Kbps granted) {
  if (calls_.contains(id)) throw std::logic_error("session already holds a macro grant");
  if (granted < cls.beta_min || granted > cls.beta_r) {
    throw std::logic_error("grant outside class bounds");
  }
  if (occupied_ + granted > capacity_) throw std::logic_error("macro capacity exceeded");
  calls_.emplace(id, Grant{cls, granted});
  occupied_ += granted;
}

void MacroLedger::set_grant(SessionId id, Kbps granted) {
  auto it = calls_.find(id);
  if (it == calls_.end()) throw LookupError("unknown session " + std::to_string(id));
  auto& g = it->second;
  if (granted < g.cls.beta_min || granted > g.cls.beta_r) {
    throw std::logic_error("grant outside class bounds");
  }
  if (occupied_ - g.granted + granted > capacity_) throw std::logic_error("macro capacity exceeded");
  occupied_ += granted - g.granted;
  g.granted = granted;
}

void MacroLedger::remove(SessionId id) {
  auto it = calls_.find(id);
  if (it == calls_.end()) throw LookupError("unknown session " + std::to_string(id));
  occupied_ -= it->second.granted;
  calls_.erase(it);
}

const Grant& MacroLedger::grant(SessionId id) const {
  auto it = calls_.find(id);
  if (it == calls_.end()) throw LookupError("unknown session " + std::to_string(id));
  return it->second;
}

Kbps releasable(const MacroLedger& ledger) {
  Kbps total = 0;
  for (const auto& [id, g] : ledger.calls()) {
    if (g.cls.adaptive) total += g.granted - g.cls.beta_min;
  }
  return total;
}

namespace {

CacDecision femto_admit(const FemtoCandidate& c) {
  CacDecision d;
  d.outcome = CacOutcome::AdmitFemto;
  d.fap = c.fap;
  d.femto_requested = true;
  return d;
}

}  // namespace

CacDecision admit_new(const TrafficClass& cls, const std::optional<FemtoCandidate>& femto,
                      const MacroLedger& ledger, const CacThresholds& thresholds) {
  CacDecision d;
  if (femto && femto->snir_db >= thresholds.gamma2_db) {
    if (femto->free_slots > 0) return femto_admit(*femto);
    d.femto_requested = true;
    d.femto_refused = true;
  }
  d.macro_requested = true;
  if (ledger.available() - ledger.handover_reserve() >= cls.beta_r) {
    d.outcome = CacOutcome::AdmitMacro;
    d.granted = cls.beta_r;
    return d;
  }
  d.macro_refused = true;
  d.outcome = CacOutcome::Block;
  return d;
}

CacDecision admit_macro_originated(const FemtoCandidate& target, double macro_snir_db,
                                   const CacThresholds& thresholds) {
  CacDecision d;
  const bool radio_ok =
      target.snir_db >= thresholds.gamma2_db || macro_snir_db <= target.snir_db;
  if (!radio_ok) {
    d.outcome = CacOutcome::Stay;
    return d;
  }
  if (target.free_slots > 0) return femto_admit(target);
  d.femto_requested = true;
  d.femto_refused = true;
  d.outcome = CacOutcome::Stay;
  return d;
}

CacDecision admit_femto_originated(const TrafficClass& cls,
                                   const std::optional<FemtoCandidate>& target,
                                   const MacroLedger& ledger, const CacThresholds& thresholds) {
  CacDecision d;
  const bool good = target && target->snir_db >= thresholds.gamma2_db;
  const bool fair =
      target && target->snir_db >= thresholds.gamma1_db && target->snir_db < thresholds.gamma2_db;

  if (good) {
    if (target->free_slots > 0) return femto_admit(*target);
    d.femto_requested = true;
    d.femto_refused = true;
  } else if (fair) {
    d.macro_requested = true;
    if (ledger.available() >= cls.beta_r) {
      d.outcome = CacOutcome::AdmitMacro;
      d.granted = cls.beta_r;
      return d;
    }
    d.macro_refused = true;
    d.femto_requested = true;
    if (target->free_slots > 0) {
      auto admitted = femto_admit(*target);
      admitted.macro_requested = true;
      admitted.macro_refused = true;
      return admitted;
    }
    d.femto_refused = true;
  }

  d.macro_requested = true;
  const Kbps available = ledger.available();
  const Kbps g = std::min(cls.beta_r, available + releasable(ledger));
  if (g >= cls.beta_min) {
    d.outcome = CacOutcome::AdmitMacro;
    d.granted = g;
    d.macro_refused = false;
    d.degradations = degrade_victims(ledger, std::max<Kbps>(0, g - available));
    return d;
  }
  d.macro_refused = true;
  d.outcome = CacOutcome::Drop;
  return d;
}

std::vector<Degradation> degrade_victims(const MacroLedger& ledger, Kbps need) {
  std::vector<Degradation> out;
  if (need <= 0) return out;
  if (need > releasable(ledger)) throw std::logic_error("degradation need exceeds releasable");

  std::vector<std::pair<SessionId, const Grant*>> victims;
  for (const auto& [id, g] : ledger.calls()) {
    if (g.cls.adaptive && g.granted > g.cls.beta_min) victims.emplace_back(id, &g);
  }
  std::stable_sort(victims.begin(), victims.end(), [](const auto& a, const auto& b) {
    const Kbps sa = a.second->granted - a.second->cls.beta_min;
    const Kbps sb = b.second->granted - b.second->cls.beta_min;
    if (sa != sb) return sa > sb;
    return a.first < b.first;
  });
  for (const auto& [id, g] : victims) {
    if (need == 0) break;
    const Kbps cut = std::min(need, g->granted - g->cls.beta_min);
    out.push_back({id, g->granted - cut});
    need -= cut;
  }
  return out;
}

void apply_degradations(MacroLedger& ledger, const std::vector<Degradation>& degradations) {
  for (const auto& d : degradations) ledger.set_grant(d.session, d.new_grant);
}

void release_call(MacroLedger& ledger, SessionId id, bool restore_qos) {
  ledger.remove(id);
  if (!restore_qos) return;
  for (const auto& [sid, g] : ledger.calls()) {
    if (!g.cls.adaptive || g.granted >= g.cls.beta_r) continue;
    const Kbps top = std::min(g.cls.beta_r - g.granted, ledger.available());
    if (top <= 0) break;
    ledger.set_grant(sid, g.granted + top);
  }
}

std::string to_string(CacOutcome outcome) {
  switch (outcome) {
    case CacOutcome::AdmitFemto: return "admit_femto";
    case CacOutcome::AdmitMacro: return "admit_macro";
    case CacOutcome::Block: return "block";
    case CacOutcome::Drop: return "drop";
    case CacOutcome::Stay: return "stay";
  }
  return "unknown";
}

}  // namespace femtonet
