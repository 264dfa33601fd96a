// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rfexpose/constants.hpp"
#include "rfexpose/errors.hpp"

namespace rfexpose {

/// Angle-indexed lookup table with linear interpolation, used for the power
/// transmission coefficient T(phi) and the tissue factor m(phi).
class AngleTable {
  public:
    AngleTable() = default;
    explicit AngleTable(std::vector<std::pair<double, double>> entries)
        : entries_(std::move(entries)) {
        if (entries_.empty())
            throw ValidationError("angle table: empty");
        for (std::size_t i = 1; i < entries_.size(); ++i)
            if (entries_[i].first <= entries_[i - 1].first)
                throw ValidationError("angle table: angles must be strictly increasing");
    }

    double min_angle_deg() const { return entries_.front().first; }
    double max_angle_deg() const { return entries_.back().first; }

    double at(double angle_deg) const {
        if (angle_deg < min_angle_deg() || angle_deg > max_angle_deg())
            throw ValidationError("angle " + std::to_string(angle_deg) +
                                  " deg outside tissue table domain [" +
                                  std::to_string(min_angle_deg()) + ", " +
                                  std::to_string(max_angle_deg()) + "]");
        for (std::size_t i = 1; i < entries_.size(); ++i) {
            if (angle_deg <= entries_[i].first) {
                const auto& [a0, v0] = entries_[i - 1];
                const auto& [a1, v1] = entries_[i];
                const double t = (angle_deg - a0) / (a1 - a0);
                return v0 + t * (v1 - v0);
            }
        }
        return entries_.back().second;
    }

  private:
    std::vector<std::pair<double, double>> entries_{{0.0, 1.0}};
};

/// Dielectric and dosimetric constants of the exposed tissue at one carrier
/// frequency, loaded from a versioned data file with per-value source notes.
struct TissueProperties {
    double frequency_ghz = 0.0;
    double rho_kg_m3 = 0.0;   // mass density
    double sigma_s_m = 0.0;   // conductivity
    double delta_m = 0.0;     // field penetration depth
    double epsilon_re = 0.0;  // Re(eps*), relative
    double epsilon_im = 0.0;  // -Im(eps*), relative, stored positive
    AngleTable transmission;  // T(phi), power transmission coefficient
    AngleTable m_factor;      // m(phi)
    std::string version;
    std::string label;

    static TissueProperties from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in)
            throw ValidationError("tissue file not readable: " + path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError("tissue file " + path + ": " + e.what());
        }
        return from_json(j);
    }

    static TissueProperties from_json(const nlohmann::json& j) {
        try {
            TissueProperties t;
            t.frequency_ghz = j.at("frequency_ghz").get<double>();
            t.rho_kg_m3 = j.at("rho").get<double>();
            t.sigma_s_m = j.at("sigma").get<double>();
            t.delta_m = j.at("delta").get<double>();
            t.epsilon_re = j.at("epsilon_re").get<double>();
            t.epsilon_im = j.at("epsilon_im").get<double>();
            t.transmission = parse_table(j.at("transmission"), true);
            t.m_factor = parse_table(j.at("m_factor"), false);
            t.version = j.value("version", "unversioned");
            t.label = j.value("label", "");
            t.validate();
            return t;
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError(std::string("tissue file: ") + e.what());
        }
    }

    void validate() const {
        if (rho_kg_m3 <= 0.0)
            throw ValidationError("tissue: rho must be > 0");
        if (sigma_s_m < 0.0)
            throw ValidationError("tissue: sigma must be >= 0");
        if (delta_m <= 0.0)
            throw ValidationError("tissue: delta must be > 0");
    }

  private:
    static AngleTable parse_table(const nlohmann::json& j, bool unit_range) {
        std::vector<std::pair<double, double>> entries;
        for (const auto& row : j) {
            const double ang = row.at(0).get<double>();
            const double val = row.at(1).get<double>();
            if (val < 0.0 || (unit_range && val > 1.0))
                throw ValidationError("tissue table value out of range at angle " +
                                      std::to_string(ang));
            entries.emplace_back(ang, val);
        }
        return AngleTable(std::move(entries));
    }
};

struct ExposureLimits {
    double sar_w_kg = 2.0;  // head/trunk basic restriction
    double pd_w_m2 = 10.0;  // general-population power-density limit
};

struct ExposureRecord {
    double d_m = 0.0;
    double s_i_w_m2 = 0.0;
    double e_rms_v_m = 0.0;
    double sar_w_kg = 0.0;
    double pd_limit_w_m2 = 0.0;
    double sar_limit_w_kg = 0.0;
    bool compliant_pd = false;
    bool compliant_sar = false;
};

/// Incident power density of an isotropically-equivalent radiator:
/// S_i = EIRP / (4 pi d^2).
inline double incident_power_density_w_m2(double eirp_w, double d_m) {
    if (d_m <= 0.0)
        throw ValidationError("incident_power_density: d must be > 0");
    return eirp_w / (4.0 * pi * d_m * d_m);
}

/// RMS field strength of a plane wave with power density s: E = sqrt(s * eta).
inline double field_strength_from_pd_v_m(double s_w_m2,
                                         double eta_ohm = PhysicalConstants::eta_free_space_ohm) {
    if (s_w_m2 < 0.0)
        throw ValidationError("field_strength_from_pd: s must be >= 0");
    return std::sqrt(s_w_m2 * eta_ohm);
}

/// Inverse of the above, PD = |E|^2 / eta.
inline double pd_from_field_strength_w_m2(double e_rms_v_m,
                                          double eta_ohm = PhysicalConstants::eta_free_space_ohm) {
    return e_rms_v_m * e_rms_v_m / eta_ohm;
}

/// SAR from the local field: sigma |E|^2 / rho, W/kg.
inline double sar_from_fields_w_kg(double e_rms_v_m, const TissueProperties& tissue) {
    if (e_rms_v_m < 0.0)
        throw ValidationError("sar_from_fields: field strength must be >= 0");
    return tissue.sigma_s_m * e_rms_v_m * e_rms_v_m / tissue.rho_kg_m3;
}

/// Far-field surface SAR from the incident power density:
/// 2 S_i T(phi) m(phi) / (delta rho), W/kg. T and m are interpolated from the
/// tissue tables at the incidence angle.
inline double sar_far_field_w_kg(double s_i_w_m2, double incidence_deg,
                                 const TissueProperties& tissue) {
    if (s_i_w_m2 < 0.0)
        throw ValidationError("sar_far_field: s_i must be >= 0");
    const double t = tissue.transmission.at(incidence_deg);
    const double m = tissue.m_factor.at(incidence_deg);
    return 2.0 * s_i_w_m2 * t * m / (tissue.delta_m * tissue.rho_kg_m3);
}

/// Fill the compliance verdicts; limits are boundary-inclusive.
inline ExposureRecord compliance(ExposureRecord record, const ExposureLimits& limits) {
    if (limits.sar_w_kg <= 0.0 || limits.pd_w_m2 <= 0.0)
        throw ValidationError("compliance: limits must be positive");
    record.sar_limit_w_kg = limits.sar_w_kg;
    record.pd_limit_w_m2 = limits.pd_w_m2;
    record.compliant_sar = record.sar_w_kg <= limits.sar_w_kg;
    record.compliant_pd = record.s_i_w_m2 <= limits.pd_w_m2;
    return record;
}

/// Full dosimetry chain for one position: incident PD, incident field, far-field
/// SAR, verdicts.
inline ExposureRecord evaluate_exposure(double eirp_w, double d_m, double incidence_deg,
                                        const TissueProperties& tissue,
                                        const ExposureLimits& limits) {
    ExposureRecord rec;
    rec.d_m = d_m;
    rec.s_i_w_m2 = incident_power_density_w_m2(eirp_w, d_m);
    rec.e_rms_v_m = field_strength_from_pd_v_m(rec.s_i_w_m2);
    rec.sar_w_kg = sar_far_field_w_kg(rec.s_i_w_m2, incidence_deg, tissue);
    return compliance(rec, limits);
}

} // namespace rfexpose
