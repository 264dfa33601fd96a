// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>

#include "rfexpose/antenna.hpp"
#include "rfexpose/constants.hpp"
#include "rfexpose/errors.hpp"
#include "rfexpose/geometry.hpp"
#include "rfexpose/propagation.hpp"

namespace rfexpose {

struct NoiseModel {
    double bandwidth_hz = 0.0;
    double noise_figure_db = 0.0;
    double temperature_k = 290.0;
};

/// Everything computed for one UE position on the link side.
struct LinkSample {
    Position3D ue_position;
    std::size_t serving_site = 0;
    double d3d_m = 0.0;
    double path_loss_db = 0.0;
    double eirp_dbm = 0.0;
    double rx_gain_dbi = 0.0;
    double p_r_dbm = 0.0;
    double snr_db = 0.0;
    double rate_bps = 0.0;
};

/// Received power is pure dB bookkeeping of the linear link equation.
inline double received_power_dbm(double eirp_dbm, double rx_gain_dbi, double path_loss_db) {
    return eirp_dbm + rx_gain_dbi - path_loss_db;
}

/// Thermal noise floor kTB plus the receiver noise figure, in dBm.
inline double noise_power_dbm(const NoiseModel& n) {
    if (n.bandwidth_hz <= 0.0)
        throw ValidationError("noise_power: bandwidth must be > 0");
    if (n.temperature_k <= 0.0)
        throw ValidationError("noise_power: temperature must be > 0");
    return w_to_dbm(PhysicalConstants::boltzmann_j_k * n.temperature_k * n.bandwidth_hz) +
           n.noise_figure_db;
}

/// Shannon capacity B log2(1 + SNR) in bit/s.
inline double shannon_rate_bps(double bandwidth_hz, double snr_linear) {
    if (snr_linear < 0.0)
        throw ValidationError("shannon_rate: snr must be >= 0");
    return bandwidth_hz * std::log2(1.0 + snr_linear);
}

struct SectorGrid {
    // The integrand is peaked near the mast (elevation pattern transitions
    // within the first few metres), so the radial direction needs more
    // resolution than the angular one.
    int radial = 256;
    int angular = 64;
};

/// Sector-averaged downlink received power: the mean over the sector area of
/// the linear received power, in dBm. The element is mounted at the sector
/// boresight (azimuth offsets attenuate per the element pattern); the array
/// factor is steered at each evaluated position. Uses a polar grid that is
/// uniform per unit area (radius via sqrt spacing).
inline double sector_average_received_power_dbm(const SectorRegion& sector,
                                                const PropagationModel& model,
                                                const Environment& env, const ElementPattern& pattern,
                                                const ArrayConfig& array, double ue_height_m,
                                                double ue_gain_dbi, const SectorGrid& grid = {}) {
    if (sector.max_radius_m <= 0.0 || sector.angular_width_deg <= 0.0)
        throw ValidationError("sector_average: empty sector region");
    if (grid.radial * grid.angular < 100)
        throw ValidationError("sector_average: grid must have at least 100 points");

    const double dh = sector.site_position.z_m - ue_height_m;
    double sum_mw = 0.0;
    for (int i = 0; i < grid.radial; ++i) {
        const double r = sector.max_radius_m * std::sqrt((i + 0.5) / grid.radial);
        const double d3d = std::hypot(r, dh);
        const double theta = 90.0 + rad_to_deg(std::atan2(dh, r));
        PathLossQuery q{d3d, r, sector.site_position.z_m, ue_height_m, LosState::Expected};
        const double pl = model.expected_path_loss_db(env, q).loss_db;
        for (int k = 0; k < grid.angular; ++k) {
            const double phi_off = (-0.5 + (k + 0.5) / grid.angular) * sector.angular_width_deg;
            const double e = eirp_dbm(array, pattern, phi_off, theta);
            sum_mw += dbm_to_mw(received_power_dbm(e, ue_gain_dbi, pl));
        }
    }
    return mw_to_dbm(sum_mw / (static_cast<double>(grid.radial) * grid.angular));
}

} // namespace rfexpose
