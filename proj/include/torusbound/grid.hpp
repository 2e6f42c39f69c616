#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "torusbound/core.hpp"
#include "torusbound/moduli.hpp"

namespace torusbound {

// ---------------------------------------------------------------------------
// Periodic quadrature grid on the fundamental parallelogram of T_{a,b}.
// Lattice coordinates (s, t) in [0,1)^2 at cell centers map to Cartesian
// (x, y) = s (1, 0) + t (a, b). The cell weight b/(Ns Nt) integrates the
// constant exactly; periodic trapezoid sums are spectrally accurate for
// smooth integrands.
// ---------------------------------------------------------------------------

class TorusGrid {
public:
    TorusGrid(const TorusParams& params, int ns, int nt) : params_(params), ns_(ns), nt_(nt) {
        require_valid(params, "TorusGrid");
        if (ns < 16 || nt < 16)
            throw std::invalid_argument("TorusGrid: resolution floor is 16 per direction");
    }

    const TorusParams& params() const { return params_; }
    int ns() const { return ns_; }
    int nt() const { return nt_; }
    std::size_t size() const { return static_cast<std::size_t>(ns_) * nt_; }

    double s_at(int i) const { return (i + 0.5) / ns_; }
    double t_at(int j) const { return (j + 0.5) / nt_; }
    double x_at(int i, int j) const { return s_at(i) + params_.a * t_at(j); }
    double y_at(int /*i*/, int j) const { return params_.b * t_at(j); }
    double weight() const { return params_.b / (static_cast<double>(ns_) * nt_); }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * nt_ + j; }

    double integrate(const std::function<double(double, double)>& f) const {
        double acc = 0.0;
        for (int i = 0; i < ns_; ++i)
            for (int j = 0; j < nt_; ++j) acc += f(x_at(i, j), y_at(i, j));
        return acc * weight();
    }

private:
    TorusParams params_;
    int ns_;
    int nt_;
};

/// Value and Cartesian partials of a sphere-valued map at one point.
template <std::size_t N>
struct MapJet {
    Vec<N> value{};
    Vec<N> dx{};
    Vec<N> dy{};
};

/// A sphere-valued map sampled on a TorusGrid, with partial derivatives in
/// the Cartesian torus coordinates.
template <std::size_t N>
struct MapSample {
    int ns = 0;
    int nt = 0;
    std::vector<Vec<N>> values;
    std::vector<Vec<N>> dx;
    std::vector<Vec<N>> dy;

    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * nt + j; }

    double max_unit_defect() const {
        double worst = 0.0;
        for (const auto& v : values) worst = std::max(worst, std::abs(norm(v) - 1.0));
        return worst;
    }

    double max_tangency_defect() const {
        double worst = 0.0;
        for (std::size_t k = 0; k < values.size(); ++k) {
            worst = std::max(worst, std::abs(dot(values[k], dx[k])));
            worst = std::max(worst, std::abs(dot(values[k], dy[k])));
        }
        return worst;
    }
};

/// Samples a map given with analytic partials.
template <std::size_t N>
MapSample<N> sample_map(const TorusGrid& grid,
                        const std::function<MapJet<N>(double, double)>& jet) {
    MapSample<N> out;
    out.ns = grid.ns();
    out.nt = grid.nt();
    out.values.resize(grid.size());
    out.dx.resize(grid.size());
    out.dy.resize(grid.size());
    for (int i = 0; i < grid.ns(); ++i) {
        for (int j = 0; j < grid.nt(); ++j) {
            const MapJet<N> m = jet(grid.x_at(i, j), grid.y_at(i, j));
            const std::size_t k = grid.index(i, j);
            out.values[k] = m.value;
            out.dx[k] = m.dx;
            out.dy[k] = m.dy;
        }
    }
    return out;
}

/// Samples a plain point map; partials from 4th-order central differences on
/// the periodic (s, t) grid, chained to Cartesian coordinates via
/// d/dx = d/ds and d/dy = (d/dt - a d/ds)/b.
template <std::size_t N>
MapSample<N> sample_map_fd(const TorusGrid& grid,
                           const std::function<Vec<N>(double, double)>& f) {
    MapSample<N> out;
    out.ns = grid.ns();
    out.nt = grid.nt();
    out.values.resize(grid.size());
    out.dx.resize(grid.size());
    out.dy.resize(grid.size());
    for (int i = 0; i < grid.ns(); ++i)
        for (int j = 0; j < grid.nt(); ++j)
            out.values[grid.index(i, j)] = f(grid.x_at(i, j), grid.y_at(i, j));

    const int ns = grid.ns(), nt = grid.nt();
    const double a = grid.params().a, b = grid.params().b;
    const double hs = 1.0 / ns, ht = 1.0 / nt;
    auto wrap = [](int v, int n) { return ((v % n) + n) % n; };
    for (int i = 0; i < ns; ++i) {
        for (int j = 0; j < nt; ++j) {
            Vec<N> ds{}, dt{};
            for (int off = 1; off <= 2; ++off) {
                const double c = off == 1 ? 8.0 : -1.0;
                axpy(ds, c, out.values[grid.index(wrap(i + off, ns), j)]);
                axpy(ds, -c, out.values[grid.index(wrap(i - off, ns), j)]);
                axpy(dt, c, out.values[grid.index(i, wrap(j + off, nt))]);
                axpy(dt, -c, out.values[grid.index(i, wrap(j - off, nt))]);
            }
            ds = scaled(ds, 1.0 / (12.0 * hs));
            dt = scaled(dt, 1.0 / (12.0 * ht));
            const std::size_t k = grid.index(i, j);
            out.dx[k] = ds;
            Vec<N> dy = dt;
            axpy(dy, -a, ds);
            out.dy[k] = scaled(dy, 1.0 / b);
        }
    }
    return out;
}

}  // namespace torusbound
