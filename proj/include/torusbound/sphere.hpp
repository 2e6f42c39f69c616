#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "torusbound/core.hpp"

namespace torusbound {

// ---------------------------------------------------------------------------
// Conformal transformations of S^{N-1} parameterized by the open unit ball:
//
//   phi_xi(p) = [ p + (beta <p,xi> + alpha) xi ] / ( alpha (<p,xi> + 1) ),
//   alpha = (1 - |xi|^2)^{-1/2},  beta = (alpha - 1) |xi|^{-2}.
//
// As |xi| -> 1 these concentrate mass toward xi/|xi|. Spherical caps, cap
// reflections, folding maps and the center-of-mass renormalization solver
// live here as well.
// ---------------------------------------------------------------------------

template <std::size_t N>
struct BallPoint {
    Vec<N> xi{};

    BallPoint() = default;
    explicit BallPoint(const Vec<N>& v) : xi(v) {
        if (!(norm(v) < 1.0 - 1e-14))
            throw std::invalid_argument("BallPoint: |xi| must be < 1 - 1e-14");
    }
};

template <std::size_t N>
struct SpherePoint {
    Vec<N> x{};

    SpherePoint() { x[0] = 1.0; }
    explicit SpherePoint(const Vec<N>& v) : x(normalized(v)) {}
};

/// Cached coefficients of one Moebius map, with its differential and the
/// closed-form inverse of the differential (rank-one update of a scaled
/// identity).
template <std::size_t N>
struct MobiusMap {
    Vec<N> xi{};
    double u = 0.0;      // |xi|^2
    double alpha = 1.0;
    double beta = 0.5;

    MobiusMap() = default;
    explicit MobiusMap(const Vec<N>& xi_) : xi(xi_), u(norm_sq(xi_)) {
        if (!(u < 1.0))
            throw std::invalid_argument("MobiusMap: |xi| must be < 1");
        alpha = 1.0 / std::sqrt(1.0 - u);
        // (alpha - 1)/u in cancellation-free form; 1/2 at xi = 0
        beta = 1.0 / ((1.0 - u) * (1.0 + alpha));
    }

    double denom(const Vec<N>& p) const { return alpha * (dot(p, xi) + 1.0); }

    Vec<N> apply(const Vec<N>& p) const {
        const double d = dot(p, xi);
        const double den = alpha * (d + 1.0);
        if (std::abs(den) < 1e-14)
            throw numeric_error("MobiusMap: evaluation at the singular antipodal point");
        Vec<N> r = p;
        axpy(r, beta * d + alpha, xi);
        return scaled(r, 1.0 / den);
    }

    /// Differential at p applied to v, given q = apply(p).
    Vec<N> push(const Vec<N>& p, const Vec<N>& q, const Vec<N>& v) const {
        const double den = denom(p);
        const double dv = dot(v, xi);
        Vec<N> r = v;
        axpy(r, beta * dv, xi);
        axpy(r, -alpha * dv, q);
        return scaled(r, 1.0 / den);
    }

    /// Solves push(p, q, w) = v for w (Sherman-Morrison on the rank-one
    /// structure of the differential).
    Vec<N> pull(const Vec<N>& p, const Vec<N>& q, const Vec<N>& v) const {
        const double den = denom(p);
        Vec<N> c = scaled(xi, beta);
        axpy(c, -alpha, q);
        const double gamma = alpha * (1.0 - dot(xi, q));
        Vec<N> r = scaled(v, den);
        axpy(r, -den * dot(v, xi) / gamma, c);
        return r;
    }
};

template <std::size_t N>
SpherePoint<N> mobius_apply(const BallPoint<N>& xi, const SpherePoint<N>& p) {
    return SpherePoint<N>(MobiusMap<N>(xi.xi).apply(p.x));
}

struct MobiusInverseReport {
    int iterations = 0;
    double residual = 0.0;
    double conjecture_gap = 0.0;  // distance to phi_{-xi}(q)
};

/// Solves phi_xi(p) = q by damped Newton on the sphere, seeded at q.
template <std::size_t N>
Vec<N> mobius_inverse_raw(const MobiusMap<N>& map, const Vec<N>& q,
                          MobiusInverseReport* report = nullptr, double tol = 1e-13) {
    Vec<N> p = q;
    Vec<N> fp = map.apply(p);
    Vec<N> res = sub(fp, q);
    double rn = norm(res);
    int it = 0;
    for (; it < 100 && rn > tol; ++it) {
        const Vec<N> step = map.pull(p, fp, scaled(res, -1.0));
        double s = 1.0;
        bool accepted = false;
        for (int h = 0; h < 50; ++h) {
            Vec<N> cand = p;
            axpy(cand, s, step);
            cand = normalized(cand);
            const Vec<N> fc = map.apply(cand);
            const Vec<N> rc = sub(fc, q);
            if (norm(rc) < rn) {
                p = cand;
                fp = fc;
                res = rc;
                rn = norm(res);
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        if (!accepted) break;
    }
    if (rn > 1e-10)
        throw numeric_error("mobius_inverse: Newton iteration did not converge");
    if (report) {
        report->iterations = it;
        report->residual = rn;
        const Vec<N> conj = MobiusMap<N>(scaled(map.xi, -1.0)).apply(q);
        report->conjecture_gap = norm(sub(p, conj));
    }
    return p;
}

template <std::size_t N>
SpherePoint<N> mobius_inverse(const BallPoint<N>& xi, const SpherePoint<N>& q,
                              MobiusInverseReport* report = nullptr) {
    return SpherePoint<N>(mobius_inverse_raw(MobiusMap<N>(xi.xi), q.x, report));
}

// ---------------------------------------------------------------------------
// Reflections, caps, folding
// ---------------------------------------------------------------------------

/// Reflection across the hyperplane orthogonal to the unit vector p.
template <std::size_t N>
Vec<N> reflect_hyperplane_raw(const Vec<N>& p, const Vec<N>& x) {
    Vec<N> r = x;
    axpy(r, -2.0 * dot(x, p), p);
    return r;
}

template <std::size_t N>
SpherePoint<N> reflect_hyperplane(const SpherePoint<N>& p, const SpherePoint<N>& x) {
    return SpherePoint<N>(reflect_hyperplane_raw(p.x, x.x));
}

/// Spherical cap C(p, t) = phi_{-t p}(open hemisphere centered at p).
/// t -> 1 exhausts the sphere, t -> -1 shrinks to the point p.
template <std::size_t N>
struct Cap {
    SpherePoint<N> center;
    double t = 0.0;

    Cap() = default;
    Cap(const SpherePoint<N>& p, double t_) : center(p), t(t_) {
        if (!(t_ > -1.0 && t_ < 1.0))
            throw std::invalid_argument("Cap: t must lie in (-1, 1)");
    }

    MobiusMap<N> generator() const { return MobiusMap<N>(scaled(center.x, -t)); }
};

template <std::size_t N>
bool cap_contains(const Cap<N>& cap, const SpherePoint<N>& x) {
    if (cap.t == 0.0) return dot(x.x, cap.center.x) > 0.0;
    const Vec<N> pre = mobius_inverse_raw(cap.generator(), x.x);
    return dot(pre, cap.center.x) > 0.0;
}

/// The conformal reflection fixing the boundary of the cap: the hemisphere
/// reflection conjugated through the cap generator.
template <std::size_t N>
SpherePoint<N> cap_reflection(const Cap<N>& cap, const SpherePoint<N>& x) {
    if (cap.t == 0.0) return reflect_hyperplane(cap.center, x);
    const MobiusMap<N> gen = cap.generator();
    const Vec<N> pre = mobius_inverse_raw(gen, x.x);
    return SpherePoint<N>(gen.apply(reflect_hyperplane_raw(cap.center.x, pre)));
}

/// Folding map: identity on the cap, cap reflection on its complement.
template <std::size_t N>
SpherePoint<N> fold(const Cap<N>& cap, const SpherePoint<N>& x) {
    if (cap.t == 0.0) {
        return dot(x.x, cap.center.x) > 0.0 ? x : reflect_hyperplane(cap.center, x);
    }
    const MobiusMap<N> gen = cap.generator();
    const Vec<N> pre = mobius_inverse_raw(gen, x.x);
    if (dot(pre, cap.center.x) > 0.0) return x;
    return SpherePoint<N>(gen.apply(reflect_hyperplane_raw(cap.center.x, pre)));
}

/// Points on the boundary sphere of the cap, for fixed-point checks:
/// images under the generator of unit vectors orthogonal to the center.
template <std::size_t N>
std::vector<SpherePoint<N>> cap_boundary_samples(const Cap<N>& cap,
                                                 const std::vector<Vec<N>>& raw_dirs) {
    const MobiusMap<N> gen = cap.generator();
    std::vector<SpherePoint<N>> out;
    out.reserve(raw_dirs.size());
    for (const Vec<N>& d : raw_dirs) {
        Vec<N> v = d;
        axpy(v, -dot(v, cap.center.x), cap.center.x);
        const double n = norm(v);
        if (n < 1e-8) continue;
        out.emplace_back(gen.apply(scaled(v, 1.0 / n)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Center-of-mass renormalization
// ---------------------------------------------------------------------------

template <std::size_t N>
struct DiscreteMeasure {
    std::vector<Vec<N>> points;
    std::vector<double> weights;

    double total_mass() const {
        double m = 0.0;
        for (double w : weights) m += w;
        return m;
    }

    void validate() const {
        if (points.empty() || points.size() != weights.size())
            throw std::invalid_argument("DiscreteMeasure: points/weights mismatch");
        double total = 0.0, wmax = 0.0;
        for (double w : weights) {
            if (!(w > 0.0) || !std::isfinite(w))
                throw std::invalid_argument("DiscreteMeasure: weights must be positive");
            total += w;
            wmax = std::max(wmax, w);
        }
        if (!(total > 0.0) || !std::isfinite(total))
            throw std::invalid_argument("DiscreteMeasure: total mass must be positive and finite");
        if (!(wmax < 0.5 * total))
            throw std::invalid_argument(
                "DiscreteMeasure: atom condition violated (a single weight carries >= half the mass)");
    }
};

template <std::size_t N>
Vec<N> weighted_mobius_mean(const DiscreteMeasure<N>& mu, const Vec<N>& xi) {
    const MobiusMap<N> map(xi);
    Vec<N> acc{};
    for (std::size_t i = 0; i < mu.points.size(); ++i)
        axpy(acc, mu.weights[i], map.apply(mu.points[i]));
    return scaled(acc, 1.0 / mu.total_mass());
}

/// Finds the unique xi in the open ball with zero push-forward barycenter:
/// sum_i w_i phi_xi(x_i) = 0. Damped Newton with a central-difference
/// Jacobian; steps are halved until the residual decreases and the iterate
/// stays inside the ball.
template <std::size_t N>
BallPoint<N> renormalize(const DiscreteMeasure<N>& mu, double tol = 1e-10,
                         const Vec<N>& seed = Vec<N>{}) {
    mu.validate();
    Vec<N> xi = seed;
    Vec<N> g = weighted_mobius_mean(mu, xi);
    double gn = norm(g);
    for (int step = 0; step < 500; ++step) {
        if (gn < tol) return BallPoint<N>(xi);
        std::array<Vec<N>, N> jac_cols;
        const double h = 1e-6;
        for (std::size_t j = 0; j < N; ++j) {
            Vec<N> xp = xi, xm = xi;
            xp[j] += h;
            xm[j] -= h;
            jac_cols[j] = scaled(sub(weighted_mobius_mean(mu, xp), weighted_mobius_mean(mu, xm)),
                                 1.0 / (2.0 * h));
        }
        // rows of the Jacobian from its columns
        std::array<Vec<N>, N> jac;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) jac[r][c] = jac_cols[c][r];
        const Vec<N> delta = solve_linear(jac, scaled(g, -1.0));

        double s = 1.0;
        bool accepted = false;
        for (int h2 = 0; h2 < 60; ++h2) {
            Vec<N> cand = xi;
            axpy(cand, s, delta);
            if (norm(cand) < 1.0 - 1e-12) {
                const Vec<N> gc = weighted_mobius_mean(mu, cand);
                if (norm(gc) < gn) {
                    xi = cand;
                    g = gc;
                    gn = norm(g);
                    accepted = true;
                    break;
                }
            }
            s *= 0.5;
        }
        if (!accepted)
            throw numeric_error("renormalize: damped Newton stalled before reaching tolerance");
    }
    throw numeric_error("renormalize: no convergence within 500 damped steps");
}

}  // namespace torusbound
