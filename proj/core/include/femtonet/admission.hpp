#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "femtonet/topology.hpp"

namespace femtonet {

using Kbps = std::int64_t;
using SessionId = std::uint64_t;

struct TrafficClass {
  std::string name;
  bool adaptive = false;
  Kbps beta_r = 64;
  Kbps beta_min = 64;
};

struct Grant {
  TrafficClass cls;
  Kbps granted = 0;
};

/// Bandwidth bookkeeping of the macrocell. `handover_reserve` units of
/// capacity are kept back from new calls (0 in the default bandwidth model).
class MacroLedger {
 public:
  explicit MacroLedger(Kbps capacity = 6000, Kbps handover_reserve = 0);

  Kbps capacity() const { return capacity_; }
  Kbps handover_reserve() const { return handover_reserve_; }
  Kbps occupied() const { return occupied_; }
  Kbps available() const { return capacity_ - occupied_; }
  std::size_t size() const { return calls_.size(); }
  bool contains(SessionId id) const { return calls_.contains(id); }
  const std::map<SessionId, Grant>& calls() const { return calls_; }

  /// Throws std::logic_error when the grant is out of class bounds or over capacity.
  void add(SessionId id, const TrafficClass& cls, Kbps granted);
  /// Throws LookupError for an unknown session.
  void set_grant(SessionId id, Kbps granted);
  /// Throws LookupError for an unknown session.
  void remove(SessionId id);
  const Grant& grant(SessionId id) const;

 private:
  Kbps capacity_;
  Kbps handover_reserve_;
  Kbps occupied_ = 0;
  std::map<SessionId, Grant> calls_;
};

Kbps releasable(const MacroLedger& ledger);

struct Degradation {
  SessionId session = 0;
  Kbps new_grant = 0;
};

enum class CacOutcome { AdmitFemto, AdmitMacro, Block, Drop, Stay };

struct CacDecision {
  CacOutcome outcome = CacOutcome::Block;
  std::optional<FapId> fap;
  Kbps granted = 0;
  std::vector<Degradation> degradations;
  // Which resources were asked for and refused on the way to the outcome.
  bool femto_requested = false;
  bool femto_refused = false;
  bool macro_requested = false;
  bool macro_refused = false;
};

struct FemtoCandidate {
  FapId fap;
  double snir_db = 0.0;
  int free_slots = 0;
};

struct CacThresholds {
  double gamma1_db = 10.0;
  double gamma2_db = 12.0;
};

CacDecision admit_new(const TrafficClass& cls, const std::optional<FemtoCandidate>& femto,
                      const MacroLedger& ledger, const CacThresholds& thresholds);

/// Optional offload of a macro call; never drops, returns Stay instead.
CacDecision admit_macro_originated(const FemtoCandidate& target, double macro_snir_db,
                                   const CacThresholds& thresholds);

CacDecision admit_femto_originated(const TrafficClass& cls,
                                   const std::optional<FemtoCandidate>& target,
                                   const MacroLedger& ledger, const CacThresholds& thresholds);

/// Largest-slack-first reduction freeing exactly `need`. Throws
/// std::logic_error when `need` exceeds releasable(ledger).
std::vector<Degradation> degrade_victims(const MacroLedger& ledger, Kbps need);

void apply_degradations(MacroLedger& ledger, const std::vector<Degradation>& degradations);

/// Removes the session. With `restore_qos`, degraded adaptive calls are
/// topped back up towards beta_r using the freed capacity, lowest id first.
void release_call(MacroLedger& ledger, SessionId id, bool restore_qos = false);

std::string to_string(CacOutcome outcome);

}  // namespace femtonet
