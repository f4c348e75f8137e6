#pragma once

#include <variant>
#include <vector>

#include "femtonet/topology.hpp"

namespace femtonet {

struct RadioParams {
  double femto_freq_mhz = 1800.0;
  double macro_freq_mhz = 1800.0;
  double indoor_loss_exponent = 30.0;  // N_pl of the indoor model
  double floor_loss_db = 0.0;
  double ms_height_m = 2.0;
  double shadow_sigma_db = 8.0;
  double penetration_db = 20.0;
  double noise_floor_dbm = -104.0;
  // Printed Hata h_b coefficient; the textbook COST-231 value is 13.82.
  double hata_hb_coefficient = 3.82;
  double min_distance_m = 1.0;
  // Co-channel FAPs farther than this from the MS are ignored in SNIR sums.
  double interference_range_m = 200.0;
};

/// Indoor femtocell loss: 20 log f + N log d + L_f - 28 plus wall crossings.
/// Distances below 1 m are clamped to 1 m.
double femto_path_loss(double freq_mhz, double distance_m, int wall_crossings, double wall_db,
                       double loss_exponent = 30.0, double floor_loss_db = 0.0);

/// Hata small/medium-city mobile-height correction a(h_m).
double hata_mobile_correction(double freq_mhz, double h_m);

/// Hata-style macrocell loss with additive shadowing and penetration terms.
double macro_path_loss(double freq_mhz, double distance_km, double h_b, double h_m,
                       double shadow_db, double penetration_db,
                       double hb_coefficient = 3.82);

inline double rssi(double tx_power_dbm, double path_loss_db) { return tx_power_dbm - path_loss_db; }

double watts_to_dbm(double watts);
double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);

struct MacroTarget {};
using CellRef = std::variant<MacroTarget, FapId>;

/// Received powers at a mobile position for one topology.
class RadioEnvironment {
 public:
  RadioEnvironment(const Topology& topology, RadioParams params);

  const Topology& topology() const { return *topology_; }
  const RadioParams& params() const { return params_; }

  double fap_path_loss_db(Point ms, FapId fap) const;
  double fap_rssi_dbm(Point ms, FapId fap) const;
  double macro_rssi_dbm(Point ms, double shadow_db) const;

  /// Target power over noise plus co-channel FAP power, summed in mW.
  double fap_snir_db(Point ms, FapId target) const;
  /// The macro carrier is not shared with FAPs: noise-limited.
  double macro_snir_db(Point ms, double shadow_db) const;

  /// Largest distance at which an unobstructed FAP still reaches `threshold_dbm`.
  double detection_range_m(double threshold_dbm) const;

 private:
  const Topology* topology_;
  RadioParams params_;
};

/// SNIR of `target` at `ms`; throws LookupError for an unknown FAP.
double snir(const Topology& topology, const RadioParams& params, Point ms, CellRef target,
            double macro_shadow_db = 0.0);

}  // namespace femtonet
