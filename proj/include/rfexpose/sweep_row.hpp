// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <charconv>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "rfexpose/errors.hpp"

namespace rfexpose {

/// One swept UE position, the unit of CSV/plot output.
struct SweepRow {
    double x_m = 0.0;
    std::size_t serving_site = 0;
    double d3d_m = 0.0;
    double path_loss_db = 0.0;
    double p_r_dbm = 0.0;
    double snr_db = 0.0;
    double rate_bps = 0.0;
    double s_i_w_m2 = 0.0;
    double sar_w_kg = 0.0;
    bool compliant_pd = false;
    bool compliant_sar = false;
    bool far_field_valid = false;
};

/// Shortest round-trip decimal form, locale-independent. Identical input bits
/// give identical text, which is what makes emitted CSVs byte-reproducible.
inline std::string format_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc())
        throw ModelError("format_double: to_chars failed");
    return std::string(buf, end);
}

inline double parse_double(std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ValidationError("not a number: \"" + std::string(s) + "\"");
    return v;
}

struct SweepColumn {
    std::string name; // unit-suffixed CSV header
    std::function<std::string(const SweepRow&)> write;
    std::function<void(SweepRow&, std::string_view)> parse;
    std::function<double(const SweepRow&)> numeric; // plotting accessor
};

inline const std::vector<SweepColumn>& sweep_columns() {
    auto dbl = [](double SweepRow::* field) {
        return SweepColumn{
            "",
            [field](const SweepRow& r) { return format_double(r.*field); },
            [field](SweepRow& r, std::string_view s) { r.*field = parse_double(s); },
            [field](const SweepRow& r) { return r.*field; },
        };
    };
    auto flag = [](bool SweepRow::* field) {
        return SweepColumn{
            "",
            [field](const SweepRow& r) { return r.*field ? "1" : "0"; },
            [field](SweepRow& r, std::string_view s) {
                if (s != "0" && s != "1")
                    throw ValidationError("not a flag: \"" + std::string(s) + "\"");
                r.*field = s == "1";
            },
            [field](const SweepRow& r) { return r.*field ? 1.0 : 0.0; },
        };
    };
    static const std::vector<SweepColumn> columns = [&] {
        std::vector<SweepColumn> c;
        auto add = [&c](std::string name, SweepColumn col) {
            col.name = std::move(name);
            c.push_back(std::move(col));
        };
        add("x_m", dbl(&SweepRow::x_m));
        add("serving_site", SweepColumn{
                                "",
                                [](const SweepRow& r) { return std::to_string(r.serving_site); },
                                [](SweepRow& r, std::string_view s) {
                                    std::size_t v = 0;
                                    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
                                    if (ec != std::errc() || ptr != s.data() + s.size())
                                        throw ValidationError("not an index: \"" + std::string(s) + "\"");
                                    r.serving_site = v;
                                },
                                [](const SweepRow& r) { return static_cast<double>(r.serving_site); },
                            });
        add("d3d_m", dbl(&SweepRow::d3d_m));
        add("path_loss_db", dbl(&SweepRow::path_loss_db));
        add("p_r_dbm", dbl(&SweepRow::p_r_dbm));
        add("snr_db", dbl(&SweepRow::snr_db));
        add("rate_bps", dbl(&SweepRow::rate_bps));
        add("s_i_w_m2", dbl(&SweepRow::s_i_w_m2));
        add("sar_w_kg", dbl(&SweepRow::sar_w_kg));
        add("compliant_pd", flag(&SweepRow::compliant_pd));
        add("compliant_sar", flag(&SweepRow::compliant_sar));
        add("far_field_valid", flag(&SweepRow::far_field_valid));
        return c;
    }();
    return columns;
}

inline const SweepColumn& sweep_column(std::string_view name) {
    for (const auto& c : sweep_columns())
        if (c.name == name)
            return c;
    throw ValidationError("unknown sweep column \"" + std::string(name) + "\"");
}

} // namespace rfexpose
