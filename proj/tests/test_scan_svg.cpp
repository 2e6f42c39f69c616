#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "torusbound/bounds.hpp"
#include "torusbound/scan.hpp"
#include "torusbound/svg.hpp"

using namespace torusbound;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

TEST_CASE("scan rows are row-major with exact header") {
    ScanConfig cfg;
    cfg.a_min = 0.0;
    cfg.a_max = 0.4;
    cfg.a_steps = 3;
    cfg.b_min = 1.0;
    cfg.b_max = 2.0;
    cfg.b_steps = 4;
    const std::vector<ScanRow> rows = compute_scan(cfg);
    REQUIRE(rows.size() == 12);
    CHECK(rows[0].a == 0.0);
    CHECK(rows[0].b == 1.0);
    CHECK(rows[1].a == 0.0);  // b inner
    CHECK(rows[4].a == Catch::Approx(0.2));

    const std::string csv = scan_to_csv(rows);
    const auto lines = split(csv, '\n');
    CHECK(lines[0] ==
          "a,b,in_region,U,A_c,four_Ac,ratio_U_over_Ac,flat_lambda2_bar,conjecture_margin,"
          "supports_conjecture");
    REQUIRE(lines.size() == 14);  // header + 12 rows + trailing empty
    CHECK(lines[13].empty());
}

TEST_CASE("CSV round-trips the bound to full precision") {
    ScanConfig cfg;
    cfg.a_min = 0.05;
    cfg.a_max = 0.45;
    cfg.a_steps = 4;
    cfg.b_min = 0.95;
    cfg.b_max = 2.4;
    cfg.b_steps = 5;
    const std::vector<ScanRow> rows = compute_scan(cfg);
    const std::string csv = scan_to_csv(rows);
    const auto lines = split(csv, '\n');
    for (std::size_t ln = 1; ln + 1 < lines.size(); ++ln) {
        const auto cells = split(lines[ln], ',');
        REQUIRE(cells.size() == 10);
        const double a = std::strtod(cells[0].c_str(), nullptr);
        const double b = std::strtod(cells[1].c_str(), nullptr);
        const double u = std::strtod(cells[3].c_str(), nullptr);
        CHECK(std::abs(upper_bound_u({a, b}) - u) <= 1e-12 * std::max(1.0, std::abs(u)));
    }
}

TEST_CASE("scan semantics") {
    const ScanRow row = scan_point(0.5, std::sqrt(3.0) / 2.0);
    CHECK(row.in_region);
    CHECK(row.four_a_c == Catch::Approx(4.0 * row.a_c));
    CHECK(row.ratio_u_over_ac == Catch::Approx(row.u / row.a_c));
    CHECK(row.flat_lambda2_bar < row.u);
    CHECK_FALSE(row.supports_conjecture);

    const ScanRow tall = scan_point(0.2, 2.0);
    CHECK(tall.supports_conjecture);
    CHECK(tall.margin < 0.0);

    const ScanRow outside = scan_point(0.45, 0.8);
    CHECK_FALSE(outside.in_region);

    ScanConfig bad;
    bad.a_min = 0.0;
    bad.a_max = 0.5;
    bad.a_steps = 0;
    CHECK_THROWS_AS(compute_scan(bad), std::invalid_argument);

    ScanConfig miss;
    miss.a_min = 0.4;
    miss.a_max = 0.5;
    miss.a_steps = 2;
    miss.b_min = 0.1;
    miss.b_max = 0.5;
    miss.b_steps = 2;
    CHECK_THROWS_AS(compute_scan(miss), std::invalid_argument);
}

TEST_CASE("heatmap SVG output") {
    ScanConfig cfg;
    cfg.a_min = 0.0;
    cfg.a_max = 0.5;
    cfg.a_steps = 5;
    cfg.b_min = 1.0;
    cfg.b_max = 2.5;
    cfg.b_steps = 6;
    cfg.column = "conjecture_margin";
    const std::vector<ScanRow> rows = compute_scan(cfg);
    const std::string svg1 = heatmap_svg(cfg, rows);
    const std::string svg2 = heatmap_svg(cfg, rows);
    CHECK(svg1 == svg2);  // byte-identical for identical input

    // one rect per cell plus the background
    std::size_t rects = 0, pos = 0;
    while ((pos = svg1.find("<rect", pos)) != std::string::npos) {
        ++rects;
        pos += 5;
    }
    CHECK(rects == rows.size() + 1);
    CHECK(svg1.find("min=") != std::string::npos);
    CHECK(svg1.find("max=") != std::string::npos);

    // cells with b >= 1.76 carry negative margin: nearer the low color
    HeatmapColors colors;
    double vmin = rows.front().margin, vmax = vmin;
    for (const auto& r : rows) {
        vmin = std::min(vmin, r.margin);
        vmax = std::max(vmax, r.margin);
    }
    for (const auto& r : rows) {
        if (r.b >= 1.76) {
            const double t = (r.margin - vmin) / (vmax - vmin);
            CHECK(t < 0.5);  // blue half of the two-color ramp
        }
    }

    // a single-cell grid still renders
    ScanConfig one;
    one.a_min = one.a_max = 0.2;
    one.a_steps = 1;
    one.b_min = one.b_max = 1.5;
    one.b_steps = 1;
    const std::vector<ScanRow> single = compute_scan(one);
    const std::string svg_single = heatmap_svg(one, single);
    rects = 0;
    pos = 0;
    while ((pos = svg_single.find("<rect", pos)) != std::string::npos) {
        ++rects;
        pos += 5;
    }
    CHECK(rects == 2);
}
