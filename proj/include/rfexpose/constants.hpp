// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

namespace rfexpose {

/// Physical constants shared across the library. Values are fixed; every
/// computation that needs one of these reads it from here so that tests and
/// the engine cannot drift apart.
struct PhysicalConstants {
    static constexpr double eta_free_space_ohm = 376.73;     // wave impedance of vacuum
    static constexpr double speed_of_light_m_s = 2.998e8;
    static constexpr double boltzmann_j_k = 1.380649e-23;
};

constexpr double pi = 3.14159265358979323846;

constexpr double deg_to_rad(double deg) { return deg * pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / pi; }

/// dBm -> milliwatt
inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
/// dBm -> watt
inline double dbm_to_w(double dbm) { return dbm_to_mw(dbm) * 1e-3; }
/// milliwatt -> dBm
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }
/// watt -> dBm
inline double w_to_dbm(double w) { return mw_to_dbm(w * 1e3); }
/// dB -> linear power ratio
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
/// linear power ratio -> dB
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

/// Free-space wavelength in meters.
inline double wavelength_m(double carrier_ghz) {
    return PhysicalConstants::speed_of_light_m_s / (carrier_ghz * 1e9);
}

} // namespace rfexpose
