// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "rfexpose/constants.hpp"
#include "rfexpose/errors.hpp"

namespace rfexpose {

struct Position3D {
    double x_m = 0.0;
    double y_m = 0.0;
    double z_m = 0.0; // height above ground, >= 0
};

/// Multi-site deployment description. rings=2 with hexagonal packing gives the
/// classic 19-site layout.
struct SitePlan {
    double isd_m = 0.0;
    int rings = 0;
    int sectors_per_site = 3; // 3 (120 deg) or 6 (60 deg)
    double site_height_m = 0.0;
    double ue_height_m = 0.0;
};

/// One sector: a wedge of a cell, defined by its site, boresight azimuth and
/// angular width. Azimuths are measured counter-clockwise from +x, degrees.
struct SectorRegion {
    Position3D site_position;
    double boresight_azimuth_deg = 0.0;
    double angular_width_deg = 0.0;
    double max_radius_m = 0.0;
};

inline double distance_2d(const Position3D& a, const Position3D& b) {
    return std::hypot(a.x_m - b.x_m, a.y_m - b.y_m);
}

/// Euclidean distance including the height difference.
inline double distance_3d(const Position3D& a, const Position3D& b) {
    return std::hypot(a.x_m - b.x_m, a.y_m - b.y_m, a.z_m - b.z_m);
}

/// Circumradius of a hexagonal cell with inter-site distance isd. Wedges of
/// this radius tile the plane without gaps (neighbouring cells overlap near
/// the corners; the cell edge along the site-to-site line stays at isd/2).
inline double cell_radius_m(double isd_m) { return isd_m / std::sqrt(3.0); }

inline int hex_site_count(int rings) { return 3 * rings * (rings + 1) + 1; }

/// Hexagonal lattice of sites, nearest-neighbour spacing = plan.isd_m, center
/// site at the origin, all at plan.site_height_m. Axial enumeration order,
/// deterministic.
inline std::vector<Position3D> generate_hex_layout(const SitePlan& plan) {
    if (plan.isd_m <= 0.0)
        throw ValidationError("generate_hex_layout: isd must be > 0");
    if (plan.rings < 0)
        throw ValidationError("generate_hex_layout: rings must be >= 0");

    const double ux = plan.isd_m;
    const double vx = plan.isd_m * 0.5;
    const double vy = plan.isd_m * std::sqrt(3.0) / 2.0;
    const int r = plan.rings;

    std::vector<Position3D> sites;
    sites.reserve(static_cast<std::size_t>(hex_site_count(r)));
    for (int q = -r; q <= r; ++q) {
        const int lo = std::max(-r, -q - r);
        const int hi = std::min(r, -q + r);
        for (int s = lo; s <= hi; ++s) {
            sites.push_back({q * ux + s * vx, s * vy, plan.site_height_m});
        }
    }
    return sites;
}

/// Split a site into equal sectors. Boresights at width/2 + k*width so the
/// k-th sector covers azimuths [k*width, (k+1)*width).
inline std::vector<SectorRegion> sectorize(const Position3D& site, int sectors_per_site,
                                           double max_radius_m) {
    if (sectors_per_site != 3 && sectors_per_site != 6)
        throw ValidationError("sectorize: sectors_per_site must be 3 or 6");
    const double width = 360.0 / sectors_per_site;
    std::vector<SectorRegion> sectors;
    sectors.reserve(static_cast<std::size_t>(sectors_per_site));
    for (int k = 0; k < sectors_per_site; ++k) {
        sectors.push_back({site, width / 2.0 + k * width, width, max_radius_m});
    }
    return sectors;
}

/// Plan-view membership test: azimuth within the sector's interval and radius
/// within max_radius. The site itself counts as inside.
inline bool sector_contains(const SectorRegion& sector, const Position3D& p) {
    const double dx = p.x_m - sector.site_position.x_m;
    const double dy = p.y_m - sector.site_position.y_m;
    const double r = std::hypot(dx, dy);
    if (r > sector.max_radius_m)
        return false;
    if (r == 0.0)
        return true;
    double az = rad_to_deg(std::atan2(dy, dx));
    if (az < 0.0)
        az += 360.0;
    double lo = sector.boresight_azimuth_deg - sector.angular_width_deg / 2.0;
    double off = az - lo;
    off -= 360.0 * std::floor(off / 360.0);
    return off < sector.angular_width_deg;
}

namespace detail {
/// 53-bit uniform double in [0,1) from raw generator output. Hand-rolled so
/// drops are bit-reproducible across standard libraries.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
} // namespace detail

/// n UE positions uniform in area over the sector wedge, z = ue_height.
/// Deterministic for a fixed seed.
inline std::vector<Position3D> drop_ues(const SectorRegion& sector, int n, double ue_height_m,
                                        std::uint64_t seed) {
    if (n < 0)
        throw ValidationError("drop_ues: n must be >= 0");
    std::mt19937_64 rng(seed);
    std::vector<Position3D> ues;
    ues.reserve(static_cast<std::size_t>(n));
    const double half = sector.angular_width_deg / 2.0;
    for (int i = 0; i < n; ++i) {
        // sqrt transform keeps the density uniform per unit area
        const double r = sector.max_radius_m * std::sqrt(detail::uniform01(rng));
        const double az = sector.boresight_azimuth_deg + (2.0 * detail::uniform01(rng) - 1.0) * half;
        ues.push_back({sector.site_position.x_m + r * std::cos(deg_to_rad(az)),
                       sector.site_position.y_m + r * std::sin(deg_to_rad(az)), ue_height_m});
    }
    return ues;
}

/// Nearest site by 3D distance; ties go to the lowest index.
inline std::pair<std::size_t, double> serving_site(const Position3D& ue,
                                                   const std::vector<Position3D>& sites) {
    if (sites.empty())
        throw ValidationError("serving_site: site list is empty");
    std::size_t best = 0;
    double best_d = distance_3d(ue, sites[0]);
    for (std::size_t i = 1; i < sites.size(); ++i) {
        const double d = distance_3d(ue, sites[i]);
        if (d < best_d) {
            best = i;
            best_d = d;
        }
    }
    return {best, best_d};
}

} // namespace rfexpose
