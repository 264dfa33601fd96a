// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <random>
#include <string>

#include <json.hpp>

#include "rfexpose/constants.hpp"
#include "rfexpose/errors.hpp"

namespace rfexpose {

enum class System { FiveG, Release9 };
enum class Profile { RMa, UMa, UMi, SMa };
enum class LosState { Los, Nlos, Expected };

struct Environment {
    System system = System::FiveG;
    Profile profile = Profile::UMi;
    double carrier_ghz = 28.0;
};

inline std::string to_string(System s) { return s == System::FiveG ? "5g" : "release9"; }

inline std::string to_string(Profile p) {
    switch (p) {
    case Profile::RMa: return "rma";
    case Profile::UMa: return "uma";
    case Profile::UMi: return "umi";
    case Profile::SMa: return "sma";
    }
    return "?";
}

inline std::string profile_key(const Environment& env) {
    return to_string(env.system) + "." + to_string(env.profile);
}

struct PathLossQuery {
    double d3d_m = 0.0;
    double d2d_m = 0.0;
    double h_ap_m = 0.0;
    double h_ue_m = 0.0;
    LosState los = LosState::Expected;
};

struct PathLossResult {
    double loss_db = 0.0;
    bool clamped = false; // query distance was outside the model's validity range
};

/// Path-loss and LOS-probability engine. All formula coefficients come from a
/// model-definition JSON file (see data/propagation_models.json); this class
/// only knows the named functional forms. Immutable after construction.
class PropagationModel {
  public:
    static PropagationModel from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in)
            throw ValidationError("propagation model file not readable: " + path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError("propagation model file " + path + ": " + e.what());
        }
        return PropagationModel(j);
    }

    explicit PropagationModel(const nlohmann::json& j) {
        if (j.value("schema", "") != "rfexpose-propagation-models")
            throw ValidationError("propagation model file: missing or wrong \"schema\"");
        version_ = j.value("version", "unversioned");
        if (!j.contains("profiles") || !j["profiles"].is_object())
            throw ValidationError("propagation model file: missing \"profiles\" object");
        for (const auto& [key, def] : j["profiles"].items()) {
            profiles_[key] = parse_profile(key, def);
        }
        if (profiles_.empty())
            throw ValidationError("propagation model file: no profiles defined");
    }

    const std::string& version() const { return version_; }

    bool has_profile(const std::string& key) const { return profiles_.count(key) != 0; }

    /// Probability of line of sight at ground distance d2d. Co-located
    /// endpoints are trivially in LOS regardless of the profile's form.
    double los_probability(const Environment& env, double d2d_m) const {
        if (d2d_m < 0.0)
            throw ValidationError("los_probability: d2d must be >= 0");
        if (d2d_m == 0.0)
            return 1.0;
        const ProfileDef& def = find(env);
        return eval_plos(def.p_los, d2d_m);
    }

    PathLossResult path_loss_db(const Environment& env, const PathLossQuery& q) const {
        validate_query(q);
        const ProfileDef& def = find(env);
        check_carrier(def, env);
        PathLossQuery cq = clamp_query(def, q);
        PathLossResult res;
        res.clamped = cq.d2d_m != q.d2d_m;
        switch (q.los) {
        case LosState::Los:
            res.loss_db = eval_branch(def.los, def, cq, env);
            break;
        case LosState::Nlos:
            res.loss_db = eval_nlos(def, cq, env);
            break;
        case LosState::Expected: {
            const double p = los_probability(env, cq.d2d_m);
            const double l = eval_branch(def.los, def, cq, env);
            const double n = eval_nlos(def, cq, env);
            res.loss_db = mix_db(p, l, n);
            break;
        }
        }
        return res;
    }

    /// Deterministic LOS/NLOS mixture: average the linear-domain gains under
    /// the LOS probability, then convert back to dB.
    PathLossResult expected_path_loss_db(const Environment& env, const PathLossQuery& q) const {
        PathLossQuery eq = q;
        eq.los = LosState::Expected;
        return path_loss_db(env, eq);
    }

    /// Per-profile validity floor on d2d (queries below it are clamped).
    double d2d_valid_min_m(const Environment& env) const { return find(env).d2d_min_m; }

    /// Profile must exist and the carrier must lie inside its declared range;
    /// this is the load-time check scenario configs go through.
    void validate_environment(const Environment& env) const { check_carrier(find(env), env); }

    static double mix_db(double p_los, double los_db, double nlos_db) {
        return -linear_to_db(p_los * db_to_linear(-los_db) + (1.0 - p_los) * db_to_linear(-nlos_db));
    }

    /// 20 log10(4 pi d f / c). Testing oracle and physical lower bound.
    static double free_space_path_loss_db(double carrier_ghz, double d_m) {
        if (d_m <= 0.0)
            throw ValidationError("free_space_path_loss: d must be > 0");
        return 20.0 * std::log10(4.0 * pi * d_m * carrier_ghz * 1e9 /
                                 PhysicalConstants::speed_of_light_m_s);
    }

  private:
    struct Branch {
        std::string form;
        bool max_with_los = false;
        std::map<std::string, double> params;
    };
    struct PlosDef {
        std::string form;
        std::map<std::string, double> params;
    };
    struct ProfileDef {
        std::string key;
        double carrier_ghz_min = 0.0, carrier_ghz_max = 1e9;
        double d2d_min_m = 0.0, d2d_max_m = 1e9;
        Branch los, nlos;
        PlosDef p_los;
    };

    static std::map<std::string, double> parse_params(const nlohmann::json& j) {
        std::map<std::string, double> out;
        for (const auto& [k, v] : j.items())
            out[k] = v.get<double>();
        return out;
    }

    static ProfileDef parse_profile(const std::string& key, const nlohmann::json& def) {
        try {
            ProfileDef p;
            p.key = key;
            const auto& cr = def.at("carrier_ghz_range");
            p.carrier_ghz_min = cr.at(0).get<double>();
            p.carrier_ghz_max = cr.at(1).get<double>();
            const auto& dr = def.at("d2d_range_m");
            p.d2d_min_m = dr.at(0).get<double>();
            p.d2d_max_m = dr.at(1).get<double>();
            p.los.form = def.at("los").at("form").get<std::string>();
            p.los.params = parse_params(def.at("los").at("params"));
            p.nlos.form = def.at("nlos").at("form").get<std::string>();
            p.nlos.max_with_los = def.at("nlos").value("max_with_los", false);
            p.nlos.params = parse_params(def.at("nlos").at("params"));
            p.p_los.form = def.at("p_los").at("form").get<std::string>();
            p.p_los.params = parse_params(def.at("p_los").at("params"));
            return p;
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError("propagation model profile \"" + key + "\": " + e.what());
        }
    }

    const ProfileDef& find(const Environment& env) const {
        auto it = profiles_.find(profile_key(env));
        if (it == profiles_.end())
            throw ValidationError("unknown environment: " + profile_key(env));
        return it->second;
    }

    void check_carrier(const ProfileDef& def, const Environment& env) const {
        if (env.carrier_ghz < def.carrier_ghz_min || env.carrier_ghz > def.carrier_ghz_max)
            throw ModelError("carrier " + std::to_string(env.carrier_ghz) + " GHz outside validity [" +
                             std::to_string(def.carrier_ghz_min) + ", " +
                             std::to_string(def.carrier_ghz_max) + "] of profile " + def.key);
    }

    static void validate_query(const PathLossQuery& q) {
        if (q.d2d_m < 0.0 || q.d3d_m < 0.0)
            throw ValidationError("path_loss: distances must be >= 0");
        if (q.d2d_m > q.d3d_m + 1e-9)
            throw ValidationError("path_loss: invalid geometry, d2d > d3d");
    }

    /// Clamp d2d to the profile's validity range and rebuild d3d from the
    /// clamped ground distance and the unchanged height difference.
    static PathLossQuery clamp_query(const ProfileDef& def, const PathLossQuery& q) {
        PathLossQuery cq = q;
        const double d2c = std::clamp(q.d2d_m, def.d2d_min_m, def.d2d_max_m);
        if (d2c != q.d2d_m) {
            cq.d2d_m = d2c;
            cq.d3d_m = std::hypot(d2c, q.h_ap_m - q.h_ue_m);
        }
        return cq;
    }

    double eval_nlos(const ProfileDef& def, const PathLossQuery& q, const Environment& env) const {
        const double n = eval_branch(def.nlos, def, q, env);
        if (def.nlos.max_with_los)
            return std::max(n, eval_branch(def.los, def, q, env));
        return n;
    }

    static double param(const Branch& b, const char* name) {
        auto it = b.params.find(name);
        if (it == b.params.end())
            throw ValidationError(std::string("model form \"") + b.form +
                                  "\" missing parameter \"" + name + "\"");
        return it->second;
    }

    double eval_branch(const Branch& b, const ProfileDef& def, const PathLossQuery& q,
                       const Environment& env) const {
        const double f_ghz = env.carrier_ghz;
        const double f_hz = f_ghz * 1e9;
        const double f_mhz = f_ghz * 1e3;
        const double d3 = q.d3d_m;

        if (b.form == "dual_slope_breakpoint") {
            // TR 38.900 UMa/UMi LOS: two slopes around the breakpoint distance
            // d'bp = 4 (h_ap - hE)(h_ue - hE) f / c, branch chosen on d2d.
            const double he = param(b, "effective_env_height_m");
            const double a = param(b, "intercept_db");
            const double c = param(b, "freq_slope_db");
            const double dbp = 4.0 * (q.h_ap_m - he) * (q.h_ue_m - he) * f_hz /
                               PhysicalConstants::speed_of_light_m_s;
            if (q.d2d_m <= dbp)
                return a + param(b, "slope1_db") * std::log10(d3) + c * std::log10(f_ghz);
            const double dh = q.h_ap_m - q.h_ue_m;
            return a + param(b, "slope2_db") * std::log10(d3) + c * std::log10(f_ghz) -
                   param(b, "breakpoint_loss_db") * std::log10(dbp * dbp + dh * dh);
        }
        if (b.form == "tr38900_rma_los") {
            const double h = param(b, "avg_building_height_m");
            const double dbp = 2.0 * pi * q.h_ap_m * q.h_ue_m * f_hz /
                               PhysicalConstants::speed_of_light_m_s;
            auto pl1 = [&](double d) {
                return 20.0 * std::log10(40.0 * pi * d * f_ghz / 3.0) +
                       std::min(0.03 * std::pow(h, 1.72), 10.0) * std::log10(d) -
                       std::min(0.044 * std::pow(h, 1.72), 14.77) + 0.002 * std::log10(h) * d;
            };
            if (q.d2d_m <= dbp)
                return pl1(d3);
            return pl1(dbp) + 40.0 * std::log10(d3 / dbp);
        }
        if (b.form == "tr38900_rma_nlos") {
            const double h = param(b, "avg_building_height_m");
            const double w = param(b, "street_width_m");
            const double hbs = q.h_ap_m;
            const double hut = q.h_ue_m;
            return 161.04 - 7.1 * std::log10(w) + 7.5 * std::log10(h) -
                   (24.37 - 3.7 * (h / hbs) * (h / hbs)) * std::log10(hbs) +
                   (43.42 - 3.1 * std::log10(hbs)) * (std::log10(d3) - 3.0) +
                   20.0 * std::log10(f_ghz) -
                   (3.2 * std::pow(std::log10(11.75 * hut), 2.0) - 4.97);
        }
        if (b.form == "log_dist_freq_height") {
            return param(b, "intercept_db") + param(b, "dist_slope_db") * std::log10(d3) +
                   param(b, "freq_slope_db") * std::log10(f_ghz) -
                   param(b, "ue_height_coeff_db") * (q.h_ue_m - param(b, "ue_height_ref_m"));
        }
        if (b.form == "cost231_hata") {
            return (44.9 - 6.55 * std::log10(q.h_ap_m)) * std::log10(d3 / 1000.0) + 45.5 +
                   (35.46 - 1.1 * q.h_ue_m) * std::log10(f_mhz) - 13.82 * std::log10(q.h_ap_m) +
                   0.7 * q.h_ue_m + param(b, "env_correction_db");
        }
        if (b.form == "log_dist_freq_mhz") {
            return param(b, "intercept_db") + param(b, "dist_slope_db") * std::log10(d3) +
                   param(b, "freq_slope_db") * std::log10(f_mhz);
        }
        if (b.form == "cost231_wi_nlos") {
            return param(b, "intercept_db") + param(b, "dist_slope_db") * std::log10(d3) +
                   (param(b, "freq_base_coeff") +
                    param(b, "freq_linear_coeff") * f_mhz / param(b, "freq_ref_mhz")) *
                       std::log10(f_mhz);
        }
        throw ValidationError("unknown path-loss form \"" + b.form + "\" in profile " + def.key);
    }

    static double plos_param(const PlosDef& p, const char* name) {
        auto it = p.params.find(name);
        if (it == p.params.end())
            throw ValidationError(std::string("p_los form \"") + p.form +
                                  "\" missing parameter \"" + name + "\"");
        return it->second;
    }

    static double eval_plos(const PlosDef& p, double d2d) {
        if (p.form == "constant")
            return plos_param(p, "value");
        if (p.form == "exp_beyond") {
            const double d0 = plos_param(p, "all_los_below_m");
            if (d2d <= d0)
                return 1.0;
            return std::exp(-(d2d - d0) / plos_param(p, "decay_m"));
        }
        if (p.form == "threshold_mix") {
            const double d0 = plos_param(p, "all_los_below_m");
            if (d2d <= d0)
                return 1.0;
            const double L = plos_param(p, "decay_m");
            return d0 / d2d + std::exp(-d2d / L) * (1.0 - d0 / d2d);
        }
        if (p.form == "linear_falloff") {
            const double cut = plos_param(p, "cutoff_m");
            return std::max(0.0, 1.0 - d2d / cut);
        }
        throw ValidationError("unknown p_los form \"" + p.form + "\"");
    }

    std::string version_;
    std::map<std::string, ProfileDef> profiles_;
};

} // namespace rfexpose
