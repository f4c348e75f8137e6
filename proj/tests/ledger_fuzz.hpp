#pragma once

// Randomized CAC operation stream against a reference counter.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "femtonet/admission.hpp"

namespace fuzz {

struct LedgerFuzzResult {
  std::uint64_t operations = 0;
  std::uint64_t violations = 0;
  std::uint64_t degradations = 0;
};

inline LedgerFuzzResult run_ledger_fuzz(std::uint64_t operations, std::uint64_t seed,
                                        femtonet::Kbps capacity = 6000) {
  using namespace femtonet;
  const TrafficClass fixed{"non_adaptive", false, 64, 64};
  const TrafficClass adaptive{"adaptive", true, 56, 28};
  const CacThresholds thr{};
  MacroLedger ledger(capacity);
  std::map<SessionId, Kbps> reference;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> snir(0.0, 20.0);
  SessionId next = 1;
  LedgerFuzzResult r;

  auto check = [&] {
    Kbps sum = 0;
    for (const auto& [id, g] : reference) sum += g;
    bool ok = ledger.occupied() <= ledger.capacity() && ledger.occupied() == sum &&
              ledger.size() == reference.size() && ledger.occupied() >= 0;
    for (const auto& [id, g] : ledger.calls()) {
      if (g.granted < g.cls.beta_min || g.granted > g.cls.beta_r) ok = false;
      const auto it = reference.find(id);
      if (it == reference.end() || it->second != g.granted) ok = false;
    }
    if (!ok) ++r.violations;
  };

  for (std::uint64_t op = 0; op < operations; ++op) {
    const double u = unit(rng);
    const auto& cls = unit(rng) < 0.5 ? fixed : adaptive;
    if (u < 0.35 || ledger.size() == 0) {
      std::optional<FemtoCandidate> femto;
      if (unit(rng) < 0.5) femto = FemtoCandidate{FapId{0}, snir(rng), unit(rng) < 0.5 ? 1 : 0};
      const auto d = admit_new(cls, femto, ledger, thr);
      if (!d.degradations.empty()) ++r.violations;
      if (d.outcome == CacOutcome::AdmitMacro) {
        ledger.add(next, cls, d.granted);
        reference[next] = d.granted;
      }
      ++next;
    } else if (u < 0.7) {
      std::optional<FemtoCandidate> target;
      if (unit(rng) < 0.5) target = FemtoCandidate{FapId{0}, snir(rng), unit(rng) < 0.5 ? 1 : 0};
      const auto d = admit_femto_originated(cls, target, ledger, thr);
      if (d.outcome == CacOutcome::AdmitMacro) {
        const Kbps before = ledger.available();
        Kbps freed = 0;
        for (const auto& g : d.degradations) {
          freed += ledger.grant(g.session).granted - g.new_grant;
          if (g.new_grant < ledger.grant(g.session).cls.beta_min) ++r.violations;
        }
        if (freed != std::max<Kbps>(0, d.granted - before)) ++r.violations;
        apply_degradations(ledger, d.degradations);
        for (const auto& g : d.degradations) reference[g.session] = g.new_grant;
        r.degradations += d.degradations.size();
        ledger.add(next, cls, d.granted);
        reference[next] = d.granted;
      }
      ++next;
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, reference.size() - 1);
      auto it = reference.begin();
      std::advance(it, static_cast<std::ptrdiff_t>(pick(rng)));
      const SessionId id = it->first;
      reference.erase(it);
      release_call(ledger, id);
    }
    check();
    ++r.operations;
  }
  return r;
}

}  // namespace fuzz
