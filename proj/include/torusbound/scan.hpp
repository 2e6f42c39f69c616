#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "torusbound/bounds.hpp"
#include "torusbound/core.hpp"
#include "torusbound/flat_spectrum.hpp"
#include "torusbound/moduli.hpp"

namespace torusbound {

// ---------------------------------------------------------------------------
// Region scans over the (a, b) plane with CSV emission.
// ---------------------------------------------------------------------------

struct ScanConfig {
    double a_min = 0.0, a_max = 0.5;
    int a_steps = 2;
    double b_min = 0.8, b_max = 2.0;
    int b_steps = 2;
    std::string column = "conjecture_margin";  // heatmap column
    std::string output;
    std::string format = "csv";

    void validate() const {
        if (a_steps < 1 || b_steps < 1)
            throw std::invalid_argument("ScanConfig: steps must be >= 1");
        if (a_max < a_min || b_max < b_min)
            throw std::invalid_argument("ScanConfig: empty range");
        if (!(b_min > 0.0))
            throw std::invalid_argument("ScanConfig: b range must be positive");
    }
};

struct ScanRow {
    double a = 0.0, b = 0.0;
    bool in_region = false;
    double u = 0.0;
    double a_c = 0.0;
    double four_a_c = 0.0;
    double ratio_u_over_ac = 0.0;
    double flat_lambda2_bar = 0.0;
    double margin = 0.0;
    bool supports_conjecture = false;

    double column(const std::string& name) const {
        if (name == "U") return u;
        if (name == "A_c") return a_c;
        if (name == "four_Ac") return four_a_c;
        if (name == "ratio_U_over_Ac") return ratio_u_over_ac;
        if (name == "flat_lambda2_bar") return flat_lambda2_bar;
        if (name == "conjecture_margin") return margin;
        if (name == "in_region") return in_region ? 1.0 : 0.0;
        if (name == "supports_conjecture") return supports_conjecture ? 1.0 : 0.0;
        throw std::invalid_argument("unknown scan column '" + name + "'");
    }
};

inline ScanRow scan_point(double a, double b) {
    const TorusParams p{a, b};
    ScanRow row;
    row.a = a;
    row.b = b;
    row.in_region = is_in_fundamental_region(p);
    row.u = upper_bound_u(p);
    row.a_c = conformal_area(p);
    row.four_a_c = 4.0 * row.a_c;
    row.ratio_u_over_ac = row.u / row.a_c;
    row.flat_lambda2_bar = normalized_eigenvalue(p, 2);
    row.margin = conjecture_margin(p);
    row.supports_conjecture = row.margin < 0.0;
    return row;
}

/// Row-major rows: a outer, b inner.
inline std::vector<ScanRow> compute_scan(const ScanConfig& cfg) {
    cfg.validate();
    std::vector<ScanRow> rows;
    rows.reserve(static_cast<std::size_t>(cfg.a_steps) * cfg.b_steps);
    bool any_in_region = false;
    for (int i = 0; i < cfg.a_steps; ++i) {
        const double a =
            cfg.a_steps == 1 ? cfg.a_min
                             : cfg.a_min + (cfg.a_max - cfg.a_min) * i / (cfg.a_steps - 1);
        for (int j = 0; j < cfg.b_steps; ++j) {
            const double b =
                cfg.b_steps == 1 ? cfg.b_min
                                 : cfg.b_min + (cfg.b_max - cfg.b_min) * j / (cfg.b_steps - 1);
            rows.push_back(scan_point(a, b));
            any_in_region = any_in_region || rows.back().in_region;
        }
    }
    if (!any_in_region)
        throw std::invalid_argument("scan ranges do not intersect the fundamental region");
    return rows;
}

inline std::string format_sig17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline constexpr const char* kScanCsvHeader =
    "a,b,in_region,U,A_c,four_Ac,ratio_U_over_Ac,flat_lambda2_bar,conjecture_margin,"
    "supports_conjecture";

inline std::string scan_to_csv(const std::vector<ScanRow>& rows) {
    std::string out = kScanCsvHeader;
    out += '\n';
    for (const ScanRow& r : rows) {
        out += format_sig17(r.a);
        out += ',';
        out += format_sig17(r.b);
        out += ',';
        out += r.in_region ? "true" : "false";
        out += ',';
        out += format_sig17(r.u);
        out += ',';
        out += format_sig17(r.a_c);
        out += ',';
        out += format_sig17(r.four_a_c);
        out += ',';
        out += format_sig17(r.ratio_u_over_ac);
        out += ',';
        out += format_sig17(r.flat_lambda2_bar);
        out += ',';
        out += format_sig17(r.margin);
        out += ',';
        out += r.supports_conjecture ? "true" : "false";
        out += '\n';
    }
    return out;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open for writing: " + path);
    f << content;
    if (!f) throw io_error("write failed: " + path);
}

}  // namespace torusbound
