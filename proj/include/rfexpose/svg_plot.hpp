// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "rfexpose/csv.hpp"
#include "rfexpose/errors.hpp"
#include "rfexpose/sweep_row.hpp"

namespace rfexpose {

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points; // (x, y)
};

struct PlotOptions {
    std::string title;
    std::string x_label = "x";
    std::string y_label = "y";
    bool log_y = false;
    int width_px = 880;
    int height_px = 560;
    CsvMetadata metadata; // embedded verbatim in a <metadata> block
};

namespace detail {

inline std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

/// Fixed two-decimal pixel coordinates keep the file compact and reproducible.
inline std::string px(double v) {
    double r = std::round(v * 100.0) / 100.0;
    if (r == 0.0)
        r = 0.0; // collapse -0
    std::string s = format_double(r);
    return s;
}

/// "Nice" tick step of the form {1,2,5}*10^k covering span/target intervals.
inline double nice_step(double span, int target_ticks) {
    if (span <= 0.0 || target_ticks < 1)
        return 1.0;
    double raw = span / target_ticks;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double mant = raw / mag;
    double step;
    if (mant <= 1.0)
        step = 1.0;
    else if (mant <= 2.0)
        step = 2.0;
    else if (mant <= 5.0)
        step = 5.0;
    else
        step = 10.0;
    return step * mag;
}

inline std::string tick_label(double v) {
    double r = std::abs(v) < 1e-12 ? 0.0 : v;
    if (std::abs(r) >= 1e5 || (r != 0.0 && std::abs(r) < 1e-3)) {
        int exp = static_cast<int>(std::floor(std::log10(std::abs(r))));
        double mant = r / std::pow(10.0, exp);
        mant = std::round(mant * 100.0) / 100.0;
        return format_double(mant) + "e" + std::to_string(exp);
    }
    return format_double(std::round(r * 1e6) / 1e6);
}

} // namespace detail

/// Writes a single self-contained SVG document (inline styling only, no
/// external fonts, scripts, or references).
inline void write_svg_plot(const std::vector<PlotSeries>& series, const PlotOptions& opt,
                           std::ostream& out) {
    if (series.empty())
        throw ValidationError("svg plot needs at least one series");
    if (opt.width_px < 320 || opt.height_px < 240)
        throw ValidationError("svg plot canvas too small");

    constexpr double kInf = std::numeric_limits<double>::infinity();
    double x_min = kInf, x_max = -kInf, y_min = kInf, y_max = -kInf;
    std::size_t usable = 0;
    for (const auto& s : series) {
        for (auto [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y))
                continue;
            if (opt.log_y && y <= 0.0)
                continue; // not representable on a log axis
            ++usable;
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    }
    if (usable == 0)
        throw ValidationError("svg plot has no plottable points");
    if (x_max == x_min) {
        x_min -= 0.5;
        x_max += 0.5;
    }
    if (opt.log_y) {
        y_min = std::pow(10.0, std::floor(std::log10(y_min)));
        y_max = std::pow(10.0, std::ceil(std::log10(y_max)));
        if (y_max == y_min)
            y_max = y_min * 10.0;
    } else {
        if (y_max == y_min) {
            y_min -= 0.5;
            y_max += 0.5;
        }
        double pad = (y_max - y_min) * 0.05;
        y_min -= pad;
        y_max += pad;
    }

    const double ml = 86, mr = 24, mt = opt.title.empty() ? 24 : 48, mb = 56;
    const double pw = opt.width_px - ml - mr;
    const double ph = opt.height_px - mt - mb;
    auto sx = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * pw; };
    auto sy = [&](double y) {
        double t = opt.log_y ? (std::log10(y) - std::log10(y_min)) /
                                   (std::log10(y_max) - std::log10(y_min))
                             : (y - y_min) / (y_max - y_min);
        return mt + (1.0 - t) * ph;
    };

    static const char* palette[] = {"#1f6fb2", "#d1495b", "#3a8f5d", "#8a5aab",
                                    "#c67b1f", "#4f5d75"};
    constexpr std::size_t palette_size = sizeof(palette) / sizeof(palette[0]);

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width_px
        << "\" height=\"" << opt.height_px << "\" viewBox=\"0 0 " << opt.width_px << " "
        << opt.height_px << "\">\n";
    if (!opt.metadata.empty()) {
        out << "  <metadata>\n";
        for (const auto& [key, value] : opt.metadata)
            out << "    " << detail::xml_escape(key) << ": " << detail::xml_escape(value)
                << "\n";
        out << "  </metadata>\n";
    }
    out << "  <rect width=\"" << opt.width_px << "\" height=\"" << opt.height_px
        << "\" fill=\"#ffffff\"/>\n";
    if (!opt.title.empty())
        out << "  <text x=\"" << detail::px(opt.width_px / 2.0)
            << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"16\" fill=\"#222222\">"
            << detail::xml_escape(opt.title) << "</text>\n";

    // Gridlines and tick labels.
    out << "  <g font-family=\"sans-serif\" font-size=\"11\" fill=\"#444444\">\n";
    double xstep = detail::nice_step(x_max - x_min, 8);
    for (double x = std::ceil(x_min / xstep) * xstep; x <= x_max + xstep * 1e-9; x += xstep) {
        double gx = sx(x);
        out << "    <line x1=\"" << detail::px(gx) << "\" y1=\"" << detail::px(mt)
            << "\" x2=\"" << detail::px(gx) << "\" y2=\"" << detail::px(mt + ph)
            << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
        out << "    <text x=\"" << detail::px(gx) << "\" y=\"" << detail::px(mt + ph + 18)
            << "\" text-anchor=\"middle\">" << detail::tick_label(x) << "</text>\n";
    }
    if (opt.log_y) {
        for (double y = y_min; y <= y_max * (1.0 + 1e-9); y *= 10.0) {
            double gy = sy(y);
            out << "    <line x1=\"" << detail::px(ml) << "\" y1=\"" << detail::px(gy)
                << "\" x2=\"" << detail::px(ml + pw) << "\" y2=\"" << detail::px(gy)
                << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
            out << "    <text x=\"" << detail::px(ml - 8) << "\" y=\"" << detail::px(gy + 4)
                << "\" text-anchor=\"end\">" << detail::tick_label(y) << "</text>\n";
        }
    } else {
        double ystep = detail::nice_step(y_max - y_min, 6);
        for (double y = std::ceil(y_min / ystep) * ystep; y <= y_max + ystep * 1e-9;
             y += ystep) {
            double gy = sy(y);
            out << "    <line x1=\"" << detail::px(ml) << "\" y1=\"" << detail::px(gy)
                << "\" x2=\"" << detail::px(ml + pw) << "\" y2=\"" << detail::px(gy)
                << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
            out << "    <text x=\"" << detail::px(ml - 8) << "\" y=\"" << detail::px(gy + 4)
                << "\" text-anchor=\"end\">" << detail::tick_label(y) << "</text>\n";
        }
    }
    out << "  </g>\n";

    // Axes.
    out << "  <g stroke=\"#222222\" stroke-width=\"1.5\">\n";
    out << "    <line x1=\"" << detail::px(ml) << "\" y1=\"" << detail::px(mt + ph)
        << "\" x2=\"" << detail::px(ml + pw) << "\" y2=\"" << detail::px(mt + ph) << "\"/>\n";
    out << "    <line x1=\"" << detail::px(ml) << "\" y1=\"" << detail::px(mt) << "\" x2=\""
        << detail::px(ml) << "\" y2=\"" << detail::px(mt + ph) << "\"/>\n";
    out << "  </g>\n";
    out << "  <text x=\"" << detail::px(ml + pw / 2.0) << "\" y=\""
        << detail::px(mt + ph + 40)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "fill=\"#222222\">"
        << detail::xml_escape(opt.x_label) << "</text>\n";
    out << "  <text x=\"20\" y=\"" << detail::px(mt + ph / 2.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "fill=\"#222222\" transform=\"rotate(-90 20 "
        << detail::px(mt + ph / 2.0) << ")\">" << detail::xml_escape(opt.y_label)
        << "</text>\n";

    // Series polylines, clipped to the axes box.
    out << "  <clipPath id=\"plot-area\"><rect x=\"" << detail::px(ml) << "\" y=\""
        << detail::px(mt) << "\" width=\"" << detail::px(pw) << "\" height=\""
        << detail::px(ph) << "\"/></clipPath>\n";
    out << "  <g clip-path=\"url(#plot-area)\" fill=\"none\" stroke-width=\"1.6\">\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = palette[i % palette_size];
        out << "    <polyline stroke=\"" << color << "\" points=\"";
        bool first = true;
        for (auto [x, y] : series[i].points) {
            if (!std::isfinite(x) || !std::isfinite(y) || (opt.log_y && y <= 0.0))
                continue;
            out << (first ? "" : " ") << detail::px(sx(x)) << "," << detail::px(sy(y));
            first = false;
        }
        out << "\"/>\n";
    }
    out << "  </g>\n";

    // Legend.
    out << "  <g font-family=\"sans-serif\" font-size=\"12\" fill=\"#222222\">\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        double ly = mt + 14 + 18.0 * static_cast<double>(i);
        const char* color = palette[i % palette_size];
        out << "    <line x1=\"" << detail::px(ml + pw - 150) << "\" y1=\"" << detail::px(ly)
            << "\" x2=\"" << detail::px(ml + pw - 126) << "\" y2=\"" << detail::px(ly)
            << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "    <text x=\"" << detail::px(ml + pw - 120) << "\" y=\""
            << detail::px(ly + 4) << "\">" << detail::xml_escape(series[i].label)
            << "</text>\n";
    }
    out << "  </g>\n";
    out << "</svg>\n";
    if (!out)
        throw ValidationError("svg write failed");
}

inline void write_svg_plot(const std::vector<PlotSeries>& series, const PlotOptions& opt,
                           const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ValidationError("cannot open \"" + path + "\" for writing");
    write_svg_plot(series, opt, out);
    out.close();
    if (!out)
        throw ValidationError("cannot write \"" + path + "\"");
}

/// Plots one sweep column against x_m.
inline void emit_plot(const std::vector<SweepRow>& rows, const std::string& column,
                      const std::string& series_label, const PlotOptions& options,
                      const std::string& path) {
    const auto& col = sweep_column(column);
    PlotSeries s;
    s.label = series_label.empty() ? column : series_label;
    s.points.reserve(rows.size());
    for (const auto& r : rows)
        s.points.emplace_back(r.x_m, col.numeric(r));
    PlotOptions opt = options;
    if (opt.y_label == "y")
        opt.y_label = column;
    if (opt.x_label == "x")
        opt.x_label = "x_m";
    write_svg_plot({std::move(s)}, opt, path);
}

} // namespace rfexpose
