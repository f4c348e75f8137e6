#include <doctest.h>

#include "femtonet/admission.hpp"
#include "femtonet/error.hpp"
#include "ledger_fuzz.hpp"

using namespace femtonet;

namespace {

const TrafficClass kFixed{"non_adaptive", false, 64, 64};
const TrafficClass kAdaptive{"adaptive", true, 56, 28};
const CacThresholds kThr{};

// Fills the ledger so exactly `available` kbps remain, using fixed calls
// from id 1000 upward plus one filler.
MacroLedger with_available(Kbps capacity, Kbps available) {
  MacroLedger l(capacity);
  if (capacity > available) {
    TrafficClass filler{"filler", false, capacity - available, capacity - available};
    l.add(1000, filler, capacity - available);
  }
  return l;
}

}  // namespace

TEST_CASE("ledger bookkeeping") {
  MacroLedger l(200);
  l.add(1, kFixed, 64);
  CHECK(l.occupied() == 64);
  CHECK_THROWS_AS(l.add(1, kFixed, 64), std::logic_error);
  CHECK_THROWS_AS(l.add(2, kAdaptive, 20), std::logic_error);
  CHECK_THROWS_AS(l.add(3, TrafficClass{"big", false, 300, 300}, 300), std::logic_error);
  release_call(l, 1);
  CHECK(l.occupied() == 0);
  l.add(4, kFixed, 64);
  release_call(l, 4);
  l.add(4, kFixed, 64);
  CHECK(l.occupied() == 64);
  CHECK_THROWS_AS(release_call(l, 99), LookupError);
  CHECK_THROWS_AS(l.set_grant(99, 10), LookupError);
  CHECK_THROWS_AS(MacroLedger(-1), std::invalid_argument);
}

TEST_CASE("releasable") {
  MacroLedger l(6000);
  CHECK(releasable(l) == 0);
  l.add(1, kAdaptive, 56);
  l.add(2, kAdaptive, 56);
  l.add(3, kFixed, 64);
  CHECK(releasable(l) == 56);
  MacroLedger floor(6000);
  floor.add(1, kAdaptive, 28);
  CHECK(releasable(floor) == 0);
}

TEST_CASE("new call policy") {
  SUBCASE("good femto with a slot") {
    const auto d = admit_new(kFixed, FemtoCandidate{FapId{3}, 13, 1}, MacroLedger(), kThr);
    CHECK(d.outcome == CacOutcome::AdmitFemto);
    CHECK(*d.fap == FapId{3});
  }
  SUBCASE("macro with room") {
    const auto d = admit_new(kFixed, std::nullopt, with_available(6000, 100), kThr);
    CHECK(d.outcome == CacOutcome::AdmitMacro);
    CHECK(d.granted == 64);
    CHECK(d.degradations.empty());
  }
  SUBCASE("no degradation for new calls") {
    auto l = with_available(6000, 40);
    // releasable capacity exists but is not used
    MacroLedger l2(6000);
    TrafficClass filler{"filler", false, 5904, 5904};
    l2.add(1000, filler, 5904);
    l2.add(1, kAdaptive, 56);
    CHECK(l2.available() == 40);
    CHECK(releasable(l2) == 28);
    const auto d = admit_new(kFixed, std::nullopt, l2, kThr);
    CHECK(d.outcome == CacOutcome::Block);
    CHECK(d.degradations.empty());
    CHECK(admit_new(kFixed, std::nullopt, l, kThr).outcome == CacOutcome::Block);
  }
  SUBCASE("weak femto falls to macro") {
    const auto d = admit_new(kFixed, FemtoCandidate{FapId{3}, 11.9, 1}, MacroLedger(), kThr);
    CHECK(d.outcome == CacOutcome::AdmitMacro);
  }
  SUBCASE("full femto falls to macro and is recorded") {
    const auto d = admit_new(kFixed, FemtoCandidate{FapId{3}, 20, 0}, MacroLedger(), kThr);
    CHECK(d.outcome == CacOutcome::AdmitMacro);
    CHECK(d.femto_refused);
  }
  SUBCASE("handover reserve is kept from new calls") {
    MacroLedger l(100, 40);
    CHECK(admit_new(kFixed, std::nullopt, l, kThr).outcome == CacOutcome::Block);
    CHECK(admit_femto_originated(kFixed, std::nullopt, l, kThr).outcome ==
          CacOutcome::AdmitMacro);
  }
}

TEST_CASE("macro-originated offload") {
  CHECK(admit_macro_originated({FapId{1}, 12, 1}, 30, kThr).outcome == CacOutcome::AdmitFemto);
  CHECK(admit_macro_originated({FapId{1}, 11, 1}, 9, kThr).outcome == CacOutcome::AdmitFemto);
  CHECK(admit_macro_originated({FapId{1}, 11, 1}, 14, kThr).outcome == CacOutcome::Stay);
  const auto full = admit_macro_originated({FapId{1}, 20, 0}, 5, kThr);
  CHECK(full.outcome == CacOutcome::Stay);
  CHECK(full.femto_refused);
}

TEST_CASE("femto-originated policy") {
  SUBCASE("step 1: good target") {
    CHECK(admit_femto_originated(kFixed, FemtoCandidate{FapId{1}, 12.5, 1}, MacroLedger(), kThr)
              .outcome == CacOutcome::AdmitFemto);
  }
  SUBCASE("step 2: fair target prefers macro") {
    const auto d =
        admit_femto_originated(kFixed, FemtoCandidate{FapId{1}, 11, 1}, MacroLedger(), kThr);
    CHECK(d.outcome == CacOutcome::AdmitMacro);
    CHECK(d.granted == 64);
  }
  SUBCASE("step 2: macro full, femto slot free, no degradation") {
    MacroLedger l(6000);
    TrafficClass filler{"filler", false, 5924, 5924};
    l.add(1000, filler, 5924);
    l.add(1, kAdaptive, 56);
    const auto d = admit_femto_originated(kFixed, FemtoCandidate{FapId{1}, 11, 1}, l, kThr);
    CHECK(d.outcome == CacOutcome::AdmitFemto);
    CHECK(d.degradations.empty());
  }
  SUBCASE("step 3: degradation frees exactly what is missing") {
    MacroLedger l(6000);
    TrafficClass filler{"filler", false, 5868, 5868};
    l.add(1000, filler, 5868);
    l.add(1, kAdaptive, 56);
    l.add(2, kAdaptive, 56);
    REQUIRE(l.available() == 20);
    const auto d = admit_femto_originated(kAdaptive, std::nullopt, l, kThr);
    REQUIRE(d.outcome == CacOutcome::AdmitMacro);
    CHECK(d.granted == 56);
    Kbps freed = 0;
    for (const auto& g : d.degradations) freed += l.grant(g.session).granted - g.new_grant;
    CHECK(freed == 36);
  }
  SUBCASE("step 3: nothing to release drops") {
    const auto d = admit_femto_originated(kFixed, std::nullopt, with_available(6000, 0), kThr);
    CHECK(d.outcome == CacOutcome::Drop);
  }
  SUBCASE("partial grant above the minimum") {
    const auto d = admit_femto_originated(kAdaptive, std::nullopt, with_available(6000, 40), kThr);
    CHECK(d.outcome == CacOutcome::AdmitMacro);
    CHECK(d.granted == 40);
    CHECK(d.degradations.empty());
  }
  SUBCASE("weak target goes straight to degradation path") {
    const auto d =
        admit_femto_originated(kFixed, FemtoCandidate{FapId{1}, 5, 1}, MacroLedger(), kThr);
    CHECK(d.outcome == CacOutcome::AdmitMacro);
    CHECK_FALSE(d.femto_requested);
  }
}

TEST_CASE("degrade victims") {
  MacroLedger l(6000);
  CHECK(degrade_victims(l, 0).empty());
  l.add(5, kAdaptive, 56);
  SUBCASE("one victim to the floor") {
    const auto v = degrade_victims(l, 28);
    REQUIRE(v.size() == 1);
    CHECK(v[0].new_grant == 28);
  }
  SUBCASE("two victims, greedy by slack then id") {
    l.add(3, kAdaptive, 56);
    const auto v = degrade_victims(l, 36);
    REQUIRE(v.size() == 2);
    CHECK(v[0].session == 3);
    CHECK(v[0].new_grant == 28);
    CHECK(v[1].session == 5);
    CHECK(v[1].new_grant == 48);
  }
  SUBCASE("largest slack first") {
    l.add(3, kAdaptive, 40);
    const auto v = degrade_victims(l, 10);
    REQUIRE(v.size() == 1);
    CHECK(v[0].session == 5);
  }
  SUBCASE("too much") { CHECK_THROWS_AS(degrade_victims(l, 29), std::logic_error); }
}

TEST_CASE("qos restoration is opt-in") {
  MacroLedger l(112);
  l.add(1, kAdaptive, 56);
  l.add(2, kAdaptive, 56);
  l.set_grant(2, 28);
  l.add(3, kAdaptive, 28);
  release_call(l, 1);
  CHECK(l.grant(2).granted == 28);
  MacroLedger r(112);
  r.add(1, kAdaptive, 56);
  r.add(2, kAdaptive, 28);
  r.add(3, kAdaptive, 28);
  release_call(r, 1, true);
  CHECK(r.grant(2).granted == 56);
  CHECK(r.grant(3).granted == 56);
  CHECK(r.occupied() <= r.capacity());
}

TEST_CASE("raising gamma2 never adds offloads admitted by the gamma2 disjunct") {
  for (double snir = 0; snir < 25; snir += 0.25) {
    for (double g2 = 10; g2 < 20; g2 += 0.5) {
      CacThresholds lo{10, g2};
      CacThresholds hi{10, g2 + 1};
      const FemtoCandidate c{FapId{1}, snir, 1};
      const bool admitted_hi = c.snir_db >= hi.gamma2_db;
      const bool admitted_lo = c.snir_db >= lo.gamma2_db;
      CHECK((!admitted_hi || admitted_lo));
      // macro snir above target: only the gamma2 disjunct can admit
      const auto d_hi = admit_macro_originated(c, snir + 1, hi);
      const auto d_lo = admit_macro_originated(c, snir + 1, lo);
      if (d_hi.outcome == CacOutcome::AdmitFemto) CHECK(d_lo.outcome == CacOutcome::AdmitFemto);
    }
  }
}

TEST_CASE("randomized ledger safety") {
  const auto r = fuzz::run_ledger_fuzz(50000, 3, 600);
  CHECK(r.violations == 0);
  CHECK(r.degradations > 0);
}

TEST_CASE("outcome names") {
  CHECK(to_string(CacOutcome::AdmitFemto) == "admit_femto");
  CHECK(to_string(CacOutcome::Stay) == "stay");
}
