// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

#include "rfexpose/constants.hpp"
#include "rfexpose/errors.hpp"

namespace rfexpose {

/// Parabolic element attenuation pattern with a front-to-back clamp, the
/// standard 3GPP single-element model. Angles: phi is azimuth offset from the
/// element boresight in [-180, 180] deg; theta is the zenith-style elevation
/// angle in [0, 180] deg with 90 deg at the horizon boresight.
struct ElementPattern {
    double phi_3db_deg = 65.0;
    double theta_3db_deg = 65.0;
    double front_to_back_db = 30.0; // A_m
    double max_gain_dbi = 5.0;      // G_max
};

/// Rectangular phased array of identical elements.
struct ArrayConfig {
    int rows = 1;
    int cols = 1;
    double element_power_dbm = 0.0;
    double spacing_wavelengths = 0.5;

    int element_count() const { return rows * cols; }
};

/// Azimuth-plane attenuation, min{12 (phi/phi_3db)^2, A_m} dB.
inline double azimuth_attenuation_db(const ElementPattern& p, double phi_deg) {
    const double v = 12.0 * (phi_deg / p.phi_3db_deg) * (phi_deg / p.phi_3db_deg);
    return std::min(v, p.front_to_back_db);
}

/// Elevation-plane attenuation, min{12 ((theta-90)/theta_3db)^2, A_m} dB.
inline double elevation_attenuation_db(const ElementPattern& p, double theta_deg) {
    const double off = theta_deg - 90.0;
    const double v = 12.0 * (off / p.theta_3db_deg) * (off / p.theta_3db_deg);
    return std::min(v, p.front_to_back_db);
}

/// Two-plane combination, min{A_a + A_e, A_m} dB.
inline double combined_attenuation_db(const ElementPattern& p, double phi_deg, double theta_deg) {
    return std::min(azimuth_attenuation_db(p, phi_deg) + elevation_attenuation_db(p, theta_deg),
                    p.front_to_back_db);
}

/// Element gain G_max - A(phi, theta) dBi.
inline double element_gain_dbi(const ElementPattern& p, double phi_deg, double theta_deg) {
    return p.max_gain_dbi - combined_attenuation_db(p, phi_deg, theta_deg);
}

/// Array gain with the beam steered at the evaluated direction: the element
/// envelope plus the coherent combining gain 10 log10(N). No scan loss beyond
/// the element pattern.
inline double array_gain_dbi(const ArrayConfig& a, const ElementPattern& p, double phi_deg,
                             double theta_deg) {
    if (a.rows < 1 || a.cols < 1)
        throw ValidationError("array_gain: rows and cols must be >= 1");
    return element_gain_dbi(p, phi_deg, theta_deg) + 10.0 * std::log10(a.element_count());
}

/// EIRP toward (phi, theta): total conducted power (per-element power plus
/// 10 log10(N)) plus the steered array gain.
inline double eirp_dbm(const ArrayConfig& a, const ElementPattern& p, double phi_deg,
                       double theta_deg) {
    return a.element_power_dbm + 10.0 * std::log10(a.element_count()) +
           array_gain_dbi(a, p, phi_deg, theta_deg);
}

/// Boresight EIRP, the maximum the array can radiate in any direction.
inline double boresight_eirp_dbm(const ArrayConfig& a, const ElementPattern& p) {
    return eirp_dbm(a, p, 0.0, 90.0);
}

/// Physical diagonal of the radiating aperture in meters.
inline double aperture_diagonal_m(const ArrayConfig& a, double carrier_ghz) {
    const double lambda = wavelength_m(carrier_ghz);
    const double w = (a.cols - 1) * a.spacing_wavelengths * lambda;
    const double h = (a.rows - 1) * a.spacing_wavelengths * lambda;
    return std::hypot(w, h);
}

/// Fraunhofer distance 2 D^2 / lambda: beyond this the far-field expressions
/// are valid. Zero for a point-like (1x1) aperture.
inline double fraunhofer_distance_m(const ArrayConfig& a, double carrier_ghz) {
    const double d = aperture_diagonal_m(a, carrier_ghz);
    return 2.0 * d * d / wavelength_m(carrier_ghz);
}

} // namespace rfexpose
