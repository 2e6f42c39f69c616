#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "torusbound/core.hpp"

namespace torusbound {

/// Golden-section minimization of a unimodal function on [lo, hi].
inline double golden_section_min(const std::function<double(double)>& f, double lo, double hi,
                                 double xtol = 1e-10) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > xtol) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    return 0.5 * (lo + hi);
}

struct NelderMeadOptions {
    int max_iter = 600;
    double xtol = 1e-10;
    double ftol = 1e-13;
    double initial_step = 0.15;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
};

/// Deterministic Nelder-Mead simplex minimization.
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double> x0, NelderMeadOptions opt = {}) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += opt.initial_step;
    for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);

    auto order = [&] {
        std::vector<std::size_t> idx(n + 1);
        for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t l, std::size_t r) { return vals[l] < vals[r]; });
        std::vector<std::vector<double>> p2(n + 1);
        std::vector<double> v2(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            p2[i] = pts[idx[i]];
            v2[i] = vals[idx[i]];
        }
        pts.swap(p2);
        vals.swap(v2);
    };

    int it = 0;
    for (; it < opt.max_iter; ++it) {
        order();
        double spread = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            spread = std::max(spread, std::abs(pts[n][i] - pts[0][i]));
        if (spread < opt.xtol && std::abs(vals[n] - vals[0]) < opt.ftol) break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t d = 0; d < n; ++d) centroid[d] += pts[i][d];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        auto blend = [&](double t) {
            std::vector<double> p(n);
            for (std::size_t d = 0; d < n; ++d)
                p[d] = centroid[d] + t * (pts[n][d] - centroid[d]);
            return p;
        };

        const auto refl = blend(-1.0);
        const double frefl = f(refl);
        if (frefl < vals[0]) {
            const auto expa = blend(-2.0);
            const double fexpa = f(expa);
            if (fexpa < frefl) {
                pts[n] = expa;
                vals[n] = fexpa;
            } else {
                pts[n] = refl;
                vals[n] = frefl;
            }
        } else if (frefl < vals[n - 1]) {
            pts[n] = refl;
            vals[n] = frefl;
        } else {
            const bool outside = frefl < vals[n];
            const auto contr = blend(outside ? -0.5 : 0.5);
            const double fcontr = f(contr);
            if (fcontr < std::min(frefl, vals[n])) {
                pts[n] = contr;
                vals[n] = fcontr;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t d = 0; d < n; ++d)
                        pts[i][d] = pts[0][d] + 0.5 * (pts[i][d] - pts[0][d]);
                    vals[i] = f(pts[i]);
                }
            }
        }
    }
    order();
    return {pts[0], vals[0], it};
}

}  // namespace torusbound
