// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rfexpose/antenna.hpp"
#include "rfexpose/constants.hpp"
#include "rfexpose/csv.hpp"
#include "rfexpose/errors.hpp"
#include "rfexpose/exposure.hpp"
#include "rfexpose/geometry.hpp"
#include "rfexpose/link.hpp"
#include "rfexpose/propagation.hpp"
#include "rfexpose/sweep_row.hpp"

namespace rfexpose {

inline constexpr const char* kToolName = "rfexpose";
inline constexpr const char* kToolVersion = "1.0.0";

enum class SweepMode { Line, Drop };

inline std::string to_string(SweepMode m) { return m == SweepMode::Line ? "line" : "drop"; }

/// Where a configuration value came from: a published system description
/// ("paper"), this tool's built-in default ("default"), or the config author
/// ("user").
struct ProvenanceEntry {
    std::string field;
    std::string value;
    std::string tag;
};

struct ScenarioConfig {
    std::string label;
    Environment env;
    SitePlan plan;
    ElementPattern pattern;
    ArrayConfig array;
    NoiseModel noise;
    double ue_gain_dbi = 0.0;
    int ues_per_sector = 30;
    SweepMode mode = SweepMode::Line;
    double sweep_start_m = 0.0;
    double sweep_end_m = 1000.0;
    double sweep_step_m = 1.0;
    std::uint64_t seed = 1;
    double incidence_deg = 0.0;
    ExposureLimits limits;
    std::string model_file;    // resolved relative to the config's directory
    std::string tissue_file;   // resolved relative to the config's directory
    std::string output_prefix; // default artifact prefix, overridable with --out
    std::string config_hash;   // fnv1a64 over the canonicalized source JSON
    std::vector<ProvenanceEntry> provenance;
};

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string fnv1a64_hex(std::string_view s) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a64(s);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

namespace detail {

inline const nlohmann::json* find_field(const nlohmann::json& root, std::string_view dotted) {
    const nlohmann::json* cur = &root;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = dotted.find('.', start);
        const std::string key(dotted.substr(start, dot == std::string_view::npos
                                                       ? std::string_view::npos
                                                       : dot - start));
        if (!cur->is_object()) {
            return nullptr;
        }
        auto it = cur->find(key);
        if (it == cur->end())
            return nullptr;
        cur = &*it;
        if (dot == std::string_view::npos)
            return cur;
        start = dot + 1;
    }
}

/// Pulls values out of the raw config JSON, applying defaults and recording a
/// provenance entry per numeric parameter.
class ConfigReader {
  public:
    ConfigReader(const nlohmann::json& root, ScenarioConfig& out) : root_(root), out_(out) {
        if (!root.is_object())
            throw ValidationError("config: top level must be a JSON object");
        if (const auto* s = find_field(root, "schema")) {
            if (!s->is_string() || s->get<std::string>() != "rfexpose-scenario")
                throw ValidationError("config: \"schema\" must be \"rfexpose-scenario\"");
        }
        if (const auto* p = find_field(root, "provenance")) {
            if (!p->is_object())
                throw ValidationError("config: \"provenance\" must be an object");
            for (const auto& [field, tag] : p->items()) {
                if (!tag.is_string())
                    throw ValidationError("config: provenance tag for \"" + field +
                                          "\" must be a string");
                const std::string t = tag.get<std::string>();
                if (t != "paper" && t != "default" && t != "user")
                    throw ValidationError("config: provenance tag \"" + t + "\" for \"" + field +
                                          "\" is not one of paper/default/user");
                tags_[field] = t;
            }
        }
    }

    std::string required_string(std::string_view field) {
        const auto* v = find_field(root_, field);
        if (!v)
            throw ValidationError("config: missing required field \"" + std::string(field) + "\"");
        if (!v->is_string())
            throw ValidationError("config: \"" + std::string(field) + "\" must be a string");
        return v->get<std::string>();
    }

    std::string optional_string(std::string_view field, std::string fallback) {
        const auto* v = find_field(root_, field);
        if (!v)
            return fallback;
        if (!v->is_string())
            throw ValidationError("config: \"" + std::string(field) + "\" must be a string");
        return v->get<std::string>();
    }

    double required_number(std::string_view field) {
        const auto* v = find_field(root_, field);
        if (!v)
            throw ValidationError("config: missing required field \"" + std::string(field) + "\"");
        return number(field, *v, true);
    }

    double optional_number(std::string_view field, double fallback) {
        const auto* v = find_field(root_, field);
        if (!v) {
            record(field, format_double(fallback), false);
            return fallback;
        }
        return number(field, *v, true);
    }

    int required_int(std::string_view field) { return to_int(field, required_number(field)); }

    int optional_int(std::string_view field, int fallback) {
        const auto* v = find_field(root_, field);
        if (!v) {
            record(field, std::to_string(fallback), false);
            return fallback;
        }
        return to_int(field, number(field, *v, true));
    }

    std::uint64_t optional_seed(std::string_view field, std::uint64_t fallback) {
        const auto* v = find_field(root_, field);
        if (!v)
            return fallback;
        if (!v->is_number_integer() || (v->is_number_integer() && !v->is_number_unsigned() &&
                                        v->get<std::int64_t>() < 0))
            throw ValidationError("config: \"" + std::string(field) +
                                  "\" must be a non-negative integer");
        return v->get<std::uint64_t>();
    }

    bool present(std::string_view field) const { return find_field(root_, field) != nullptr; }

    /// Marks all unused provenance tags as errors so typos do not pass silently.
    void finish() const {
        for (const auto& [field, tag] : tags_)
            if (!used_tags_.count(field))
                throw ValidationError("config: provenance tag for unknown field \"" + field +
                                      "\"");
    }

  private:
    double number(std::string_view field, const nlohmann::json& v, bool from_file) {
        if (!v.is_number())
            throw ValidationError("config: \"" + std::string(field) + "\" must be a number");
        const double d = v.get<double>();
        if (!std::isfinite(d))
            throw ValidationError("config: \"" + std::string(field) + "\" must be finite");
        record(field, format_double(d), from_file);
        return d;
    }

    static int to_int(std::string_view field, double d) {
        if (d != std::floor(d) || std::abs(d) > 1e9)
            throw ValidationError("config: \"" + std::string(field) + "\" must be an integer");
        return static_cast<int>(d);
    }

    void record(std::string_view field, std::string value, bool from_file) {
        const std::string key(field);
        std::string tag = from_file ? "user" : "default";
        auto it = tags_.find(key);
        if (it != tags_.end()) {
            tag = it->second;
            used_tags_.insert(key);
        }
        out_.provenance.push_back({key, std::move(value), std::move(tag)});
    }

    const nlohmann::json& root_;
    ScenarioConfig& out_;
    std::map<std::string, std::string> tags_;
    std::set<std::string> used_tags_;
};

inline System parse_system(const std::string& s) {
    if (s == "5g")
        return System::FiveG;
    if (s == "release9")
        return System::Release9;
    throw ValidationError("config: \"system\" must be \"5g\" or \"release9\", got \"" + s + "\"");
}

inline Profile parse_profile_name(const std::string& s) {
    if (s == "rma")
        return Profile::RMa;
    if (s == "uma")
        return Profile::UMa;
    if (s == "umi")
        return Profile::UMi;
    if (s == "sma")
        return Profile::SMa;
    throw ValidationError("config: \"profile\" must be one of rma/uma/umi/sma, got \"" + s +
                          "\"");
}

inline std::string resolve_relative(const std::string& config_path, const std::string& file) {
    namespace fs = std::filesystem;
    fs::path p(file);
    if (p.is_absolute())
        return p.lexically_normal().string();
    return (fs::path(config_path).parent_path() / p).lexically_normal().string();
}

} // namespace detail

/// Parses and validates a scenario config. Error messages name the offending
/// field; file paths are resolved relative to the config file's directory.
inline ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("config file not readable: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("config file " + path + ": " + e.what());
    }

    ScenarioConfig c;
    detail::ConfigReader r(j, c);

    c.env.system = detail::parse_system(r.required_string("system"));
    c.env.profile = detail::parse_profile_name(r.required_string("profile"));
    const bool r9 = c.env.system == System::Release9;

    c.env.carrier_ghz = r.required_number("carrier_ghz");
    if (c.env.carrier_ghz <= 0.0)
        throw ValidationError("config: \"carrier_ghz\" must be > 0");
    c.noise.bandwidth_hz = r.required_number("bandwidth_hz");
    if (c.noise.bandwidth_hz <= 0.0)
        throw ValidationError("config: \"bandwidth_hz\" must be > 0");
    c.noise.noise_figure_db = r.optional_number("noise_figure_db", 7.0);
    if (c.noise.noise_figure_db < 0.0)
        throw ValidationError("config: \"noise_figure_db\" must be >= 0");
    c.noise.temperature_k = r.optional_number("temperature_k", 290.0);
    if (c.noise.temperature_k <= 0.0)
        throw ValidationError("config: \"temperature_k\" must be > 0");

    c.plan.isd_m = r.required_number("site.isd_m");
    if (c.plan.isd_m <= 0.0)
        throw ValidationError("config: \"site.isd_m\" must be > 0");
    c.plan.rings = r.optional_int("site.rings", 2);
    if (c.plan.rings < 0)
        throw ValidationError("config: \"site.rings\" must be >= 0");
    c.plan.sectors_per_site = r.optional_int("site.sectors_per_site", r9 ? 6 : 3);
    if (c.plan.sectors_per_site != 3 && c.plan.sectors_per_site != 6)
        throw ValidationError("config: \"site.sectors_per_site\" must be 3 or 6");
    c.plan.site_height_m = r.optional_number("site.height_m", r9 ? 32.0 : 10.0);
    if (c.plan.site_height_m <= 0.0)
        throw ValidationError("config: \"site.height_m\" must be > 0");
    c.plan.ue_height_m = r.optional_number("site.ue_height_m", 1.5);
    if (c.plan.ue_height_m <= 0.0)
        throw ValidationError("config: \"site.ue_height_m\" must be > 0");

    c.array.rows = r.required_int("array.rows");
    c.array.cols = r.required_int("array.cols");
    if (c.array.rows < 1 || c.array.cols < 1)
        throw ValidationError("config: \"array.rows\" and \"array.cols\" must be >= 1");
    c.array.element_power_dbm = r.required_number("array.element_power_dbm");
    c.array.spacing_wavelengths = r.optional_number("array.spacing_wavelengths", 0.5);
    if (c.array.spacing_wavelengths <= 0.0)
        throw ValidationError("config: \"array.spacing_wavelengths\" must be > 0");

    c.pattern.phi_3db_deg = r.optional_number("pattern.phi_3db_deg", r9 ? 70.0 : 65.0);
    c.pattern.theta_3db_deg = r.optional_number("pattern.theta_3db_deg", r9 ? 35.0 : 65.0);
    c.pattern.front_to_back_db = r.optional_number("pattern.front_to_back_db", r9 ? 23.0 : 30.0);
    c.pattern.max_gain_dbi = r.optional_number("pattern.max_gain_dbi", r9 ? 17.0 : 5.0);
    if (c.pattern.phi_3db_deg <= 0.0 || c.pattern.theta_3db_deg <= 0.0)
        throw ValidationError("config: pattern beamwidths must be > 0");
    if (c.pattern.front_to_back_db <= 0.0)
        throw ValidationError("config: \"pattern.front_to_back_db\" must be > 0");

    c.ue_gain_dbi = r.optional_number("ue.gain_dbi", 0.0);
    c.ues_per_sector = r.optional_int("ue.per_sector", 30);
    if (c.ues_per_sector < 1)
        throw ValidationError("config: \"ue.per_sector\" must be >= 1");

    const std::string mode = r.optional_string("sweep.mode", "line");
    if (mode == "line")
        c.mode = SweepMode::Line;
    else if (mode == "drop")
        c.mode = SweepMode::Drop;
    else
        throw ValidationError("config: \"sweep.mode\" must be \"line\" or \"drop\", got \"" +
                              mode + "\"");
    c.sweep_start_m = r.optional_number("sweep.start_m", 0.0);
    c.sweep_end_m = r.optional_number("sweep.end_m", 1000.0);
    c.sweep_step_m = r.optional_number("sweep.step_m", 1.0);
    if (c.sweep_start_m < 0.0)
        throw ValidationError("config: \"sweep.start_m\" must be >= 0");
    if (c.sweep_step_m <= 0.0)
        throw ValidationError("config: \"sweep.step_m\" must be > 0");
    if (c.sweep_end_m < c.sweep_start_m)
        throw ValidationError("config: \"sweep.end_m\" must be >= \"sweep.start_m\"");
    c.seed = r.optional_seed("sweep.seed", 1);

    c.incidence_deg = r.optional_number("exposure.incidence_deg", 0.0);
    if (c.incidence_deg < 0.0 || c.incidence_deg > 90.0)
        throw ValidationError("config: \"exposure.incidence_deg\" must be in [0, 90]");
    c.limits.sar_w_kg = r.optional_number("exposure.sar_limit_w_kg", 2.0);
    c.limits.pd_w_m2 = r.optional_number("exposure.pd_limit_w_m2", 10.0);
    if (c.limits.sar_w_kg <= 0.0 || c.limits.pd_w_m2 <= 0.0)
        throw ValidationError("config: exposure limits must be > 0");

    c.model_file = detail::resolve_relative(path, r.required_string("model_file"));
    c.tissue_file = detail::resolve_relative(path, r.required_string("tissue_file"));
    c.output_prefix = r.optional_string("output", "");
    c.label = r.optional_string("label", to_string(c.env.system) + " " +
                                             to_string(c.env.profile));
    r.finish();

    c.config_hash = "fnv1a64:" + fnv1a64_hex(j.dump());
    return c;
}

struct LoadedScenario {
    ScenarioConfig config;
    PropagationModel model;
    TissueProperties tissue;
};

/// Loads config plus the model and tissue files it references, and checks the
/// scenario's environment against the model's declared validity.
inline LoadedScenario load_scenario(const std::string& path) {
    ScenarioConfig config = load_config(path);
    PropagationModel model = PropagationModel::from_file(config.model_file);
    if (!model.has_profile(profile_key(config.env)))
        throw ValidationError("config: profile \"" + to_string(config.env.profile) +
                              "\" is not defined for system \"" + to_string(config.env.system) +
                              "\" in " + config.model_file);
    model.validate_environment(config.env);
    TissueProperties tissue = TissueProperties::from_file(config.tissue_file);
    if (config.incidence_deg < tissue.transmission.min_angle_deg() ||
        config.incidence_deg > tissue.transmission.max_angle_deg())
        throw ValidationError("config: \"exposure.incidence_deg\" outside tissue table domain");
    return {std::move(config), std::move(model), std::move(tissue)};
}

namespace detail {

/// Stateless per-(site, sector) stream seed so drop layouts are reproducible
/// and independent of iteration order.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t site, std::uint64_t sector) {
    auto mix = [](std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(seed) ^ site) ^ sector);
}

/// Row-level invariants re-checked on a ~1% sample of every sweep; a failure
/// here means the pipeline itself is inconsistent, not the user's input.
inline void self_check_row(const SweepRow& row, double eirp_dbm_v, double ue_gain_dbi) {
    const double pr = received_power_dbm(eirp_dbm_v, ue_gain_dbi, row.path_loss_db);
    if (std::abs(pr - row.p_r_dbm) > 1e-9)
        throw ModelError("self-check: received power mismatch at x=" + format_double(row.x_m));
    const double eirp_w = dbm_to_w(eirp_dbm_v);
    const double s = row.s_i_w_m2 * 4.0 * pi * row.d3d_m * row.d3d_m;
    if (eirp_w > 0.0 && std::abs(s / eirp_w - 1.0) > 1e-9)
        throw ModelError("self-check: inverse-square law violated at x=" + format_double(row.x_m));
    if (!(row.rate_bps >= 0.0) || !(row.sar_w_kg >= 0.0) || !std::isfinite(row.snr_db))
        throw ModelError("self-check: non-physical sample at x=" + format_double(row.x_m));
}

} // namespace detail

/// Masts for the 1-D corridor sweep: one site every ISD from x=0 out to the
/// end of the sweep, all on the x axis.
inline std::vector<Position3D> line_sites(const ScenarioConfig& c) {
    std::vector<Position3D> sites;
    for (double x = 0.0; x <= c.sweep_end_m + 1e-9; x += c.plan.isd_m)
        sites.push_back({x, 0.0, c.plan.site_height_m});
    return sites;
}

/// Evaluates the full chain (serving site, expected path loss, steered-beam
/// EIRP, SNR, rate, dosimetry) for one UE position.
inline SweepRow evaluate_position(const Position3D& ue, const std::vector<Position3D>& sites,
                                  const LoadedScenario& s) {
    const ScenarioConfig& c = s.config;
    SweepRow row;
    row.x_m = ue.x_m;
    const auto [site_idx, d3d] = serving_site(ue, sites);
    row.serving_site = site_idx;
    row.d3d_m = d3d;
    PathLossQuery q;
    q.d3d_m = d3d;
    q.d2d_m = distance_2d(ue, sites[site_idx]);
    q.h_ap_m = c.plan.site_height_m;
    q.h_ue_m = c.plan.ue_height_m;
    row.path_loss_db = s.model.expected_path_loss_db(c.env, q).loss_db;
    const double eirp = boresight_eirp_dbm(c.array, c.pattern); // main lobe steered onto the UE
    row.p_r_dbm = received_power_dbm(eirp, c.ue_gain_dbi, row.path_loss_db);
    row.snr_db = row.p_r_dbm - noise_power_dbm(c.noise);
    row.rate_bps = shannon_rate_bps(c.noise.bandwidth_hz, db_to_linear(row.snr_db));
    const ExposureRecord rec =
        evaluate_exposure(dbm_to_w(eirp), d3d, c.incidence_deg, s.tissue, c.limits);
    row.s_i_w_m2 = rec.s_i_w_m2;
    row.sar_w_kg = rec.sar_w_kg;
    row.compliant_pd = rec.compliant_pd;
    row.compliant_sar = rec.compliant_sar;
    row.far_field_valid = d3d >= fraunhofer_distance_m(c.array, c.env.carrier_ghz);
    return row;
}

/// Runs the configured sweep. Line mode walks the corridor between masts at a
/// fixed step; drop mode scatters UEs uniformly over every sector of a hex
/// layout. Rows come back in deterministic order (by position index).
inline std::vector<SweepRow> run_sweep(const LoadedScenario& s) {
    const ScenarioConfig& c = s.config;
    std::vector<SweepRow> rows;
    const double eirp = boresight_eirp_dbm(c.array, c.pattern);

    if (c.mode == SweepMode::Line) {
        const std::vector<Position3D> sites = line_sites(c);
        const auto n = static_cast<std::size_t>(
            std::floor((c.sweep_end_m - c.sweep_start_m) / c.sweep_step_m + 1e-9));
        rows.reserve(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            const double x = c.sweep_start_m + static_cast<double>(i) * c.sweep_step_m;
            rows.push_back(evaluate_position({x, 0.0, c.plan.ue_height_m}, sites, s));
        }
    } else {
        const std::vector<Position3D> sites = generate_hex_layout(c.plan);
        const double radius = cell_radius_m(c.plan.isd_m);
        rows.reserve(sites.size() * static_cast<std::size_t>(c.plan.sectors_per_site) *
                     static_cast<std::size_t>(c.ues_per_sector));
        for (std::size_t i = 0; i < sites.size(); ++i) {
            const auto sectors = sectorize(sites[i], c.plan.sectors_per_site, radius);
            for (std::size_t k = 0; k < sectors.size(); ++k) {
                const auto ues = drop_ues(sectors[k], c.ues_per_sector, c.plan.ue_height_m,
                                          detail::mix_seed(c.seed, i, k));
                for (const auto& ue : ues)
                    rows.push_back(evaluate_position(ue, sites, s));
            }
        }
    }

    for (std::size_t i = 0; i < rows.size(); i += 97)
        detail::self_check_row(rows[i], eirp, c.ue_gain_dbi);
    if (!rows.empty())
        detail::self_check_row(rows.back(), eirp, c.ue_gain_dbi);
    return rows;
}

/// Schema-plus-invariant self-test: runs a coarse 33-point line sweep through
/// the full chain and re-checks every row's physical invariants. Returns the
/// number of rows checked; throws on any violation.
inline std::size_t self_test(const LoadedScenario& s) {
    LoadedScenario t = s;
    t.config.mode = SweepMode::Line;
    if (t.config.sweep_end_m <= t.config.sweep_start_m)
        t.config.sweep_end_m = t.config.sweep_start_m + 32.0;
    t.config.sweep_step_m = (t.config.sweep_end_m - t.config.sweep_start_m) / 32.0;
    const std::vector<SweepRow> rows = run_sweep(t);
    const double eirp = boresight_eirp_dbm(t.config.array, t.config.pattern);
    for (const auto& row : rows)
        detail::self_check_row(row, eirp, t.config.ue_gain_dbi);
    return rows.size();
}

/// Ordered `# key: value` block written ahead of every CSV/SVG artifact:
/// run identity (label, hash, seed), data-file versions, and one line per
/// configuration parameter with its provenance tag.
inline CsvMetadata run_metadata(const LoadedScenario& s) {
    const ScenarioConfig& c = s.config;
    CsvMetadata md;
    md.emplace_back("generator", std::string(kToolName) + " " + kToolVersion);
    md.emplace_back("label", c.label);
    md.emplace_back("system", to_string(c.env.system));
    md.emplace_back("profile", to_string(c.env.profile));
    md.emplace_back("mode", to_string(c.mode));
    md.emplace_back("seed", std::to_string(c.seed));
    md.emplace_back("config_hash", c.config_hash);
    md.emplace_back("model_file_version", s.model.version());
    md.emplace_back("tissue_file_version", s.tissue.version);
    for (const auto& e : c.provenance)
        md.emplace_back("param " + e.field, e.value + " [" + e.tag + "]");
    return md;
}

struct ComparisonEdgeRow {
    double x_m = 0.0;
    double rate_a_bps = 0.0;
    double rate_b_bps = 0.0;
    double rate_ratio = 0.0;
    double pd_ratio = 0.0;
    double sar_ratio = 0.0;
};

struct ComparisonReport {
    std::string label_a, label_b;
    std::vector<double> x_m;
    std::vector<double> rate_ratio, pd_ratio, sar_ratio; // per position, A over B
    double median_rate_ratio = 0.0;
    double median_pd_ratio = 0.0;
    double median_sar_ratio = 0.0;
    double min_edge_rate_a_bps = 0.0;
    std::vector<ComparisonEdgeRow> edges; // at cell-edge positions of system A
};

namespace detail {

/// Median with the even-count convention of averaging the two middle values.
inline double median(std::vector<double> v) {
    if (v.empty())
        throw ValidationError("median of empty set");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1)
        return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace detail

/// Position-by-position ratios of system A to system B over two sweeps on the
/// same grid, with medians and a cell-edge table (edges of system A: odd
/// multiples of ISD/2 along the corridor).
inline ComparisonReport compare_systems(const ScenarioConfig& ca, const std::vector<SweepRow>& a,
                                        const ScenarioConfig& cb,
                                        const std::vector<SweepRow>& b) {
    if (a.empty() || b.empty())
        throw ValidationError("compare: both sweeps must be non-empty");
    if (a.size() != b.size())
        throw ValidationError("compare: sweeps have different lengths (" +
                              std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    ComparisonReport rep;
    rep.label_a = ca.label;
    rep.label_b = cb.label;
    rep.x_m.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i].x_m - b[i].x_m) > 1e-6)
            throw ValidationError("compare: position grids differ at row " + std::to_string(i));
        if (b[i].rate_bps <= 0.0 || b[i].s_i_w_m2 <= 0.0 || b[i].sar_w_kg <= 0.0)
            throw ModelError("compare: reference system has a non-positive sample at x=" +
                             format_double(b[i].x_m));
        rep.x_m.push_back(a[i].x_m);
        rep.rate_ratio.push_back(a[i].rate_bps / b[i].rate_bps);
        rep.pd_ratio.push_back(a[i].s_i_w_m2 / b[i].s_i_w_m2);
        rep.sar_ratio.push_back(a[i].sar_w_kg / b[i].sar_w_kg);
    }
    rep.median_rate_ratio = detail::median(rep.rate_ratio);
    rep.median_pd_ratio = detail::median(rep.pd_ratio);
    rep.median_sar_ratio = detail::median(rep.sar_ratio);

    const double half = ca.plan.isd_m / 2.0;
    const double x_min = rep.x_m.front();
    const double x_max = rep.x_m.back();
    bool first_edge = true;
    for (double e = half; e <= x_max + 1e-9; e += ca.plan.isd_m) {
        if (e < x_min - 1e-9)
            continue;
        // Nearest swept position to the nominal edge.
        std::size_t best = 0;
        double best_d = std::abs(rep.x_m[0] - e);
        for (std::size_t i = 1; i < rep.x_m.size(); ++i) {
            const double d = std::abs(rep.x_m[i] - e);
            if (d < best_d) {
                best = i;
                best_d = d;
            }
        }
        ComparisonEdgeRow row;
        row.x_m = rep.x_m[best];
        row.rate_a_bps = a[best].rate_bps;
        row.rate_b_bps = b[best].rate_bps;
        row.rate_ratio = rep.rate_ratio[best];
        row.pd_ratio = rep.pd_ratio[best];
        row.sar_ratio = rep.sar_ratio[best];
        rep.edges.push_back(row);
        if (first_edge || row.rate_a_bps < rep.min_edge_rate_a_bps) {
            rep.min_edge_rate_a_bps = row.rate_a_bps;
            first_edge = false;
        }
    }
    return rep;
}

/// Comparison CSV: same comment-metadata convention as sweep output, columns
/// are per-position ratios.
inline void emit_comparison_csv(const ComparisonReport& rep, const CsvMetadata& metadata,
                                std::ostream& out) {
    for (const auto& [key, value] : metadata)
        out << "# " << key << ": " << value << "\n";
    out << "x_m,rate_ratio,pd_ratio,sar_ratio\n";
    for (std::size_t i = 0; i < rep.x_m.size(); ++i)
        out << format_double(rep.x_m[i]) << "," << format_double(rep.rate_ratio[i]) << ","
            << format_double(rep.pd_ratio[i]) << "," << format_double(rep.sar_ratio[i]) << "\n";
    if (!out)
        throw ValidationError("comparison csv write failed");
}

inline std::string comparison_text(const ComparisonReport& rep) {
    std::ostringstream out;
    out << "comparison: " << rep.label_a << "  vs  " << rep.label_b << "\n";
    out << "positions compared: " << rep.x_m.size() << "\n";
    out << "median ratios (A/B):\n";
    out << "  rate: " << format_double(rep.median_rate_ratio) << "\n";
    out << "  incident power density: " << format_double(rep.median_pd_ratio) << "\n";
    out << "  sar: " << format_double(rep.median_sar_ratio) << "\n";
    out << "cell-edge positions of A:\n";
    out << "  x_m  rate_a_bps  rate_b_bps  rate_ratio  pd_ratio  sar_ratio\n";
    for (const auto& e : rep.edges)
        out << "  " << format_double(e.x_m) << "  " << format_double(e.rate_a_bps) << "  "
            << format_double(e.rate_b_bps) << "  " << format_double(e.rate_ratio) << "  "
            << format_double(e.pd_ratio) << "  " << format_double(e.sar_ratio) << "\n";
    out << "minimum cell-edge rate of A: " << format_double(rep.min_edge_rate_a_bps)
        << " bit/s\n";
    return out.str();
}

struct PresetInfo {
    std::string name; // file stem, usable as a config argument
    std::string path;
    std::string label;
};

/// Preset configs shipped under <data_dir>/presets, sorted by name.
inline std::vector<PresetInfo> list_presets(const std::string& data_dir) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::path(data_dir) / "presets";
    if (!fs::is_directory(dir))
        throw ValidationError("preset directory not found: " + dir.string());
    std::vector<PresetInfo> presets;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".json")
            continue;
        PresetInfo info;
        info.name = entry.path().stem().string();
        info.path = entry.path().string();
        std::ifstream in(entry.path());
        nlohmann::json j;
        try {
            in >> j;
            info.label = j.value("label", "");
        } catch (const nlohmann::json::exception&) {
            info.label = "(unreadable)";
        }
        presets.push_back(std::move(info));
    }
    std::sort(presets.begin(), presets.end(),
              [](const PresetInfo& a, const PresetInfo& b) { return a.name < b.name; });
    return presets;
}

/// A --config argument is either a path to a config file or the name of a
/// shipped preset.
inline std::string resolve_config_path(const std::string& arg, const std::string& data_dir) {
    namespace fs = std::filesystem;
    if (fs::is_regular_file(arg))
        return arg;
    const fs::path preset = fs::path(data_dir) / "presets" / (arg + ".json");
    if (fs::is_regular_file(preset))
        return preset.string();
    throw ValidationError("config \"" + arg + "\" is neither a file nor a preset under " +
                          (fs::path(data_dir) / "presets").string());
}

} // namespace rfexpose
