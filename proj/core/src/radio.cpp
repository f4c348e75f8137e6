#include "femtonet/radio.hpp"

#include <algorithm>
#include <cmath>

namespace femtonet {

double femto_path_loss(double freq_mhz, double distance_m, int wall_crossings, double wall_db,
                       double loss_exponent, double floor_loss_db) {
  const double d = std::max(distance_m, 1.0);
  return 20.0 * std::log10(freq_mhz) + loss_exponent * std::log10(d) + floor_loss_db - 28.0 +
         wall_crossings * wall_db;
}

double hata_mobile_correction(double freq_mhz, double h_m) {
  const double lf = std::log10(freq_mhz);
  return (1.1 * lf - 0.7) * h_m - (1.56 * lf - 0.8);
}

double macro_path_loss(double freq_mhz, double distance_km, double h_b, double h_m,
                       double shadow_db, double penetration_db, double hb_coefficient) {
  const double lf = std::log10(freq_mhz);
  const double lhb = std::log10(h_b);
  return 36.55 + 26.16 * lf - hb_coefficient * lhb - hata_mobile_correction(freq_mhz, h_m) +
         (44.9 - 6.55 * lhb) * std::log10(distance_km) + shadow_db + penetration_db;
}

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts * 1000.0); }
double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

RadioEnvironment::RadioEnvironment(const Topology& topology, RadioParams params)
    : topology_(&topology), params_(params) {}

double RadioEnvironment::fap_path_loss_db(Point ms, FapId fap) const {
  const auto& f = topology_->fap(fap);
  const double d = std::max(distance(ms, f.position), params_.min_distance_m);
  return femto_path_loss(params_.femto_freq_mhz, d, 0, 0.0, params_.indoor_loss_exponent,
                         params_.floor_loss_db) +
         topology_->wall_loss_db(ms, f.position);
}

double RadioEnvironment::fap_rssi_dbm(Point ms, FapId fap) const {
  return rssi(mw_to_dbm(topology_->fap(fap).tx_power_mw), fap_path_loss_db(ms, fap));
}

double RadioEnvironment::macro_rssi_dbm(Point ms, double shadow_db) const {
  const auto& m = topology_->macro();
  const double d_km = std::max(distance(ms, m.position), params_.min_distance_m) / 1000.0;
  const double loss = macro_path_loss(params_.macro_freq_mhz, d_km, m.height_m, params_.ms_height_m,
                                      shadow_db, params_.penetration_db,
                                      params_.hata_hb_coefficient);
  return rssi(watts_to_dbm(m.tx_power_w), loss);
}

double RadioEnvironment::fap_snir_db(Point ms, FapId target) const {
  const auto& t = topology_->fap(target);
  const double signal_mw = dbm_to_mw(fap_rssi_dbm(ms, target));
  double denom_mw = dbm_to_mw(params_.noise_floor_dbm);
  for (const auto id : topology_->faps_within(ms, params_.interference_range_m)) {
    if (id == target) continue;
    if (topology_->fap(id).frequency_channel != t.frequency_channel) continue;
    denom_mw += dbm_to_mw(fap_rssi_dbm(ms, id));
  }
  return 10.0 * std::log10(signal_mw / denom_mw);
}

double RadioEnvironment::macro_snir_db(Point ms, double shadow_db) const {
  return macro_rssi_dbm(ms, shadow_db) - params_.noise_floor_dbm;
}

double RadioEnvironment::detection_range_m(double threshold_dbm) const {
  double tx_dbm = -1e300;
  for (const auto& f : topology_->faps()) tx_dbm = std::max(tx_dbm, mw_to_dbm(f.tx_power_mw));
  if (topology_->faps().empty()) return 0.0;
  const double budget = tx_dbm - threshold_dbm - 20.0 * std::log10(params_.femto_freq_mhz) -
                        params_.floor_loss_db + 28.0;
  return std::max(params_.min_distance_m, std::pow(10.0, budget / params_.indoor_loss_exponent));
}

double snir(const Topology& topology, const RadioParams& params, Point ms, CellRef target,
            double macro_shadow_db) {
  const RadioEnvironment env(topology, params);
  if (const auto* fap = std::get_if<FapId>(&target)) return env.fap_snir_db(ms, *fap);
  return env.macro_snir_db(ms, macro_shadow_db);
}

}  // namespace femtonet
