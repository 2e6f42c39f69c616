#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "torusbound/core.hpp"
#include "torusbound/scan.hpp"

namespace torusbound {

// ---------------------------------------------------------------------------
// Deterministic SVG heatmap of one scan column: one rect per grid cell,
// linear two-color ramp, axis labels and a min/max legend.
// ---------------------------------------------------------------------------

struct HeatmapColors {
    // low endpoint (holds for the most negative values on signed columns)
    int lo_r = 0x21, lo_g = 0x66, lo_b = 0xac;
    int hi_r = 0xb2, hi_g = 0x18, hi_b = 0x2b;
};

namespace svg_detail {

inline std::string fmt1(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
}

inline std::string fmt6(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline std::string lerp_color(const HeatmapColors& c, double t) {
    t = std::clamp(t, 0.0, 1.0);
    const int r = static_cast<int>(std::lround(c.lo_r + t * (c.hi_r - c.lo_r)));
    const int g = static_cast<int>(std::lround(c.lo_g + t * (c.hi_g - c.lo_g)));
    const int b = static_cast<int>(std::lround(c.lo_b + t * (c.hi_b - c.lo_b)));
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

}  // namespace svg_detail

inline std::string heatmap_svg(const ScanConfig& cfg, const std::vector<ScanRow>& rows,
                               HeatmapColors colors = {}) {
    const int na = cfg.a_steps, nb = cfg.b_steps;
    double vmin = rows.front().column(cfg.column), vmax = vmin;
    for (const ScanRow& r : rows) {
        const double v = r.column(cfg.column);
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    const double span = vmax > vmin ? vmax - vmin : 1.0;

    const double cell = 12.0;
    const double margin_l = 60.0, margin_b = 46.0, margin_t = 16.0, margin_r = 16.0;
    const double plot_w = cell * na, plot_h = cell * nb;
    const double width = margin_l + plot_w + margin_r;
    const double height = margin_t + plot_h + margin_b + 22.0;

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + svg_detail::fmt1(width) +
         "\" height=\"" + svg_detail::fmt1(height) + "\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"" + svg_detail::fmt1(width) + "\" height=\"" +
         svg_detail::fmt1(height) + "\" fill=\"#ffffff\"/>\n";

    // rows are a-outer, b-inner; draw b upward
    for (int i = 0; i < na; ++i) {
        for (int j = 0; j < nb; ++j) {
            const ScanRow& r = rows[static_cast<std::size_t>(i) * nb + j];
            const double t = (r.column(cfg.column) - vmin) / span;
            const double x = margin_l + cell * i;
            const double y = margin_t + plot_h - cell * (j + 1);
            s += "<rect x=\"" + svg_detail::fmt1(x) + "\" y=\"" + svg_detail::fmt1(y) +
                 "\" width=\"" + svg_detail::fmt1(cell) + "\" height=\"" + svg_detail::fmt1(cell) +
                 "\" fill=\"" + svg_detail::lerp_color(colors, t) + "\"/>\n";
        }
    }

    s += "<text x=\"" + svg_detail::fmt1(margin_l + plot_w / 2) + "\" y=\"" +
         svg_detail::fmt1(margin_t + plot_h + 30.0) +
         "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">a: " +
         svg_detail::fmt6(cfg.a_min) + " .. " + svg_detail::fmt6(cfg.a_max) + "</text>\n";
    s += "<text x=\"12\" y=\"" + svg_detail::fmt1(margin_t + plot_h / 2) +
         "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\" transform=\"rotate(-90 "
         "12 " +
         svg_detail::fmt1(margin_t + plot_h / 2) + ")\">b: " + svg_detail::fmt6(cfg.b_min) +
         " .. " + svg_detail::fmt6(cfg.b_max) + "</text>\n";
    s += "<text x=\"" + svg_detail::fmt1(margin_l) + "\" y=\"" +
         svg_detail::fmt1(height - 8.0) +
         "\" font-family=\"monospace\" font-size=\"11\">" + cfg.column +
         "  min=" + svg_detail::fmt6(vmin) + " (" + svg_detail::lerp_color(colors, 0.0) +
         ")  max=" + svg_detail::fmt6(vmax) + " (" + svg_detail::lerp_color(colors, 1.0) +
         ")</text>\n";
    s += "</svg>\n";
    return s;
}

}  // namespace torusbound
