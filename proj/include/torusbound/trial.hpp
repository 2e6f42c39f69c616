#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "torusbound/core.hpp"
#include "torusbound/energy.hpp"
#include "torusbound/flat_spectrum.hpp"
#include "torusbound/grid.hpp"
#include "torusbound/moduli.hpp"
#include "torusbound/optim.hpp"
#include "torusbound/sphere.hpp"

namespace torusbound {

// ---------------------------------------------------------------------------
// Trial-function machinery: given the renormalized embedding f = phi_xi o Psi
// and a first eigenfunction f1, the vector field
//     h(C) = integral of phi_{xi_C} o F_C o f  *  f1
// over the torus, where xi_C renormalizes the folded push-forward measure.
// A cap with h(C) = 0 makes the folded coordinates admissible trial
// functions for the second eigenvalue.
// ---------------------------------------------------------------------------

/// Choice of a unit-norm first eigenfunction: a mode in the lowest nonzero
/// eigenspace, a parity, and a rotation angle mixing the cosine/sine pair.
struct F1Choice {
    Mode mode{1, 0};
    Parity parity = Parity::Cos;
    double angle = 0.0;
    bool use_default_mode = true;  // pick the first mode of the lambda_1 eigenspace
};

struct TrialContext {
    TorusParams params;
    double r = 0.55;
    TorusGrid grid;
    std::vector<double> f1;     // unit L^2 norm samples
    MapSample<4> psi;           // phi_xi o Psi with analytic partials
    Vec<4> xi0{};               // initial renormalization point
    Vec<4> f1_correlation{};    // integral of (phi_xi o Psi) f1
    double mass = 0.0;          // flat area b
    bool needs_fold = false;    // correlation does not already vanish
    Mode f1_mode{1, 0};
};

inline TrialContext build_context(const TorusParams& params, double r, int grid_n,
                                  const F1Choice& choice = {}) {
    TrialContext ctx{params, r, TorusGrid(params, grid_n, grid_n), {}, {}, {}, {}, 0.0, false, {}};
    ctx.mass = flat_area(params);

    Mode mode = choice.mode;
    if (choice.use_default_mode) {
        const SpectrumList spec = enumerate_spectrum(params, 1);
        mode = spec.entries.at(1).modes.front();
    }
    ctx.f1_mode = mode;

    // f1 = cos(angle) * (parity eigenfunction) + sin(angle) * (partner)
    const Parity partner = choice.parity == Parity::Cos ? Parity::Sin : Parity::Cos;
    const double ca = std::cos(choice.angle), sa = std::sin(choice.angle);
    ctx.f1.resize(ctx.grid.size());
    double sq = 0.0;
    for (int i = 0; i < ctx.grid.ns(); ++i) {
        for (int j = 0; j < ctx.grid.nt(); ++j) {
            const double x = ctx.grid.x_at(i, j), y = ctx.grid.y_at(i, j);
            const double v = ca * eigenfunction_eval(params, mode, choice.parity, x, y) +
                             sa * eigenfunction_eval(params, mode, partner, x, y);
            ctx.f1[ctx.grid.index(i, j)] = v;
            sq += v * v;
        }
    }
    const double l2 = std::sqrt(sq * ctx.grid.weight());
    for (double& v : ctx.f1) v /= l2;

    const CliffordEmbedding emb(params, r);
    const MapSample<4> base = sample_embedding(ctx.grid, emb);

    DiscreteMeasure<4> mu;
    mu.points = base.values;
    mu.weights.assign(base.values.size(), ctx.grid.weight());
    ctx.xi0 = renormalize(mu, 1e-11).xi;
    ctx.psi = compose_mobius(base, ctx.xi0);

    for (std::size_t k = 0; k < ctx.psi.values.size(); ++k)
        axpy(ctx.f1_correlation, ctx.f1[k] * ctx.grid.weight(), ctx.psi.values[k]);
    ctx.needs_fold = norm(ctx.f1_correlation) > 1e-8 * ctx.mass;
    return ctx;
}

struct HResult {
    Vec<4> h{};
    Vec<4> xi_c{};
    double renorm_residual = 0.0;
};

namespace detail {

/// Folded values of the context map under a cap, shared by h and the energy
/// split. Nodes landing within boundary_eps of the cap seam are classified
/// by the sign they carry; the value is continuous there.
inline std::vector<Vec<4>> folded_values(const TrialContext& ctx, const Cap<4>& cap,
                                         std::vector<bool>* inside_out = nullptr) {
    const MobiusMap<4> gen = cap.generator();
    const bool hemis = cap.t == 0.0;
    std::vector<Vec<4>> out(ctx.psi.values.size());
    if (inside_out) inside_out->assign(out.size(), false);
    for (std::size_t k = 0; k < out.size(); ++k) {
        const Vec<4>& z = ctx.psi.values[k];
        const Vec<4> pre = hemis ? z : mobius_inverse_raw(gen, z);
        const bool inside = dot(pre, cap.center.x) > 0.0;
        if (inside_out) (*inside_out)[k] = inside;
        if (inside) {
            out[k] = z;
        } else {
            const Vec<4> rp = reflect_hyperplane_raw(cap.center.x, pre);
            out[k] = hemis ? rp : gen.apply(rp);
        }
    }
    return out;
}

}  // namespace detail

/// h(C) with the folded-measure renormalization point.
inline HResult vector_h(const TrialContext& ctx, const Cap<4>& cap, double renorm_tol = 1e-11) {
    const std::vector<Vec<4>> folded = detail::folded_values(ctx, cap);
    DiscreteMeasure<4> mu;
    mu.points = folded;
    mu.weights.assign(folded.size(), ctx.grid.weight());
    const Vec<4> xi_c = renormalize(mu, renorm_tol).xi;
    const MobiusMap<4> map(xi_c);
    HResult res;
    res.xi_c = xi_c;
    for (std::size_t k = 0; k < folded.size(); ++k)
        axpy(res.h, ctx.f1[k] * ctx.grid.weight(), map.apply(folded[k]));
    res.renorm_residual = norm(weighted_mobius_mean(mu, xi_c));
    return res;
}

struct HNormalized {
    Vec<4> direction{};
    double magnitude = 0.0;
    bool degenerate = false;  // |h| below threshold: the interesting zero
};

inline HNormalized normalized_h(const TrialContext& ctx, const Cap<4>& cap) {
    const HResult res = vector_h(ctx, cap);
    HNormalized out;
    out.magnitude = norm(res.h);
    if (out.magnitude <= 1e-12) {
        out.degenerate = true;
        return out;
    }
    out.direction = scaled(res.h, 1.0 / out.magnitude);
    return out;
}

// ---------------------------------------------------------------------------
// Search for a cap with h(C) = 0
// ---------------------------------------------------------------------------

struct CapSearchResult {
    Cap<4> cap;
    double residual = 0.0;         // |h| at the returned cap
    double coarse_residual = 0.0;  // best |h| over the coarse candidate grid
    bool trivial = false;          // correlation already vanished: no fold needed
    bool converged = false;        // residual below the success threshold
    double threshold = 0.0;
};

/// Deterministic candidate caps: the first density^2 directions and first
/// density t-values of seeded master sequences, so candidate sets at
/// doubling densities are nested.
inline std::vector<Cap<4>> cap_candidates(int density, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Vec<4>> dirs;
    dirs.reserve(static_cast<std::size_t>(density) * density);
    for (int i = 0; i < density * density; ++i) {
        Vec<4> v{};
        double n2 = 0.0;
        do {
            for (auto& c : v) c = gauss(rng);
            n2 = norm_sq(v);
        } while (n2 < 1e-12);
        dirs.push_back(scaled(v, 1.0 / std::sqrt(n2)));
    }
    std::mt19937_64 rng_t(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> unif(-0.9, 0.9);
    std::vector<double> ts(density);
    for (double& t : ts) t = unif(rng_t);

    std::vector<Cap<4>> out;
    out.reserve(dirs.size() * ts.size());
    for (const auto& d : dirs)
        for (double t : ts) out.emplace_back(SpherePoint<4>(d), t);
    return out;
}

/// Coarse scan over (p, t) followed by Nelder-Mead refinement of the best
/// candidates, minimizing |h|. The cap is parameterized by an unnormalized
/// direction in R^4 plus t.
inline CapSearchResult search_orthogonal_cap(const TrialContext& ctx, int density = 16,
                                             std::uint64_t seed = 12345,
                                             int coarse_subsample = 4) {
    CapSearchResult out{Cap<4>(SpherePoint<4>(), 0.0), 0.0, 0.0, false, false, 0.0};
    out.threshold = 1e-6 * ctx.mass;
    if (!ctx.needs_fold) {
        out.trivial = true;
        out.cap = Cap<4>(SpherePoint<4>(), 0.999);
        out.residual = norm(ctx.f1_correlation);
        out.coarse_residual = out.residual;
        out.converged = true;
        return out;
    }

    // coarse stage on a subsampled context to keep the scan cheap
    TrialContext coarse = ctx;
    const int step = std::max(1, coarse_subsample);
    if (step > 1 && ctx.grid.ns() / step >= 16 && ctx.grid.nt() / step >= 16) {
        coarse.grid = TorusGrid(ctx.params, ctx.grid.ns() / step, ctx.grid.nt() / step);
        coarse.f1.clear();
        coarse.psi.values.clear();
        coarse.psi.dx.clear();
        coarse.psi.dy.clear();
        coarse.psi.ns = coarse.grid.ns();
        coarse.psi.nt = coarse.grid.nt();
        for (int i = 0; i < ctx.grid.ns(); i += step) {
            for (int j = 0; j < ctx.grid.nt(); j += step) {
                const std::size_t k = ctx.grid.index(i, j);
                coarse.f1.push_back(ctx.f1[k]);
                coarse.psi.values.push_back(ctx.psi.values[k]);
                coarse.psi.dx.push_back(ctx.psi.dx[k]);
                coarse.psi.dy.push_back(ctx.psi.dy[k]);
            }
        }
    }

    const std::vector<Cap<4>> cands = cap_candidates(density, seed);
    std::vector<std::pair<double, std::size_t>> ranked;
    ranked.reserve(cands.size());
    for (std::size_t i = 0; i < cands.size(); ++i) {
        const HResult hr = vector_h(coarse, cands[i], 1e-9);
        ranked.emplace_back(norm(hr.h), i);
    }
    std::sort(ranked.begin(), ranked.end());
    out.coarse_residual = ranked.front().first;

    const auto objective = [&](const std::vector<double>& z) {
        Vec<4> dir{z[0], z[1], z[2], z[3]};
        const double n = norm(dir);
        if (n < 0.2 || std::abs(z[4]) > 0.93) return 1e6 + norm_sq(dir) + z[4] * z[4];
        const Cap<4> cap(SpherePoint<4>(dir), z[4]);
        return norm(vector_h(ctx, cap).h);
    };

    out.residual = 1e300;
    NelderMeadOptions nm;
    nm.max_iter = 400;
    nm.xtol = 1e-12;
    nm.ftol = 0.0;
    nm.initial_step = 0.2;
    const int refine = std::min<std::size_t>(3, ranked.size());
    for (int c = 0; c < refine; ++c) {
        const Cap<4>& cap0 = cands[ranked[c].second];
        std::vector<double> z0 = {cap0.center.x[0], cap0.center.x[1], cap0.center.x[2],
                                  cap0.center.x[3], cap0.t};
        const NelderMeadResult res = nelder_mead(objective, z0, nm);
        if (res.value < out.residual) {
            out.residual = res.value;
            out.cap = Cap<4>(SpherePoint<4>(Vec<4>{res.x[0], res.x[1], res.x[2], res.x[3]}),
                             std::clamp(res.x[4], -0.93, 0.93));
        }
        if (out.residual < 1e-3 * out.threshold) break;
    }
    out.converged = out.residual < out.threshold;
    return out;
}

// ---------------------------------------------------------------------------
// Energy diagnostics for folded composites
// ---------------------------------------------------------------------------

struct FoldEnergySplit {
    double total = 0.0;     // integral of the folded composite's energy density
    double inside = 0.0;    // the part over the preimage of the cap
    double outside = 0.0;
    Vec<4> xi_c{};
};

/// Energy density split of phi_{xi_C} o F_C o f across the cap preimage,
/// with piecewise-analytic partials (no differencing across the seam).
inline FoldEnergySplit fold_energy_split(const TrialContext& ctx, const Cap<4>& cap) {
    std::vector<bool> inside;
    const std::vector<Vec<4>> folded = detail::folded_values(ctx, cap, &inside);
    DiscreteMeasure<4> mu;
    mu.points = folded;
    mu.weights.assign(folded.size(), ctx.grid.weight());
    const Vec<4> xi_c = renormalize(mu, 1e-11).xi;

    const MobiusMap<4> outer(xi_c);
    const MobiusMap<4> gen = cap.generator();
    const bool hemis = cap.t == 0.0;
    FoldEnergySplit split;
    split.xi_c = xi_c;
    for (std::size_t k = 0; k < folded.size(); ++k) {
        Vec<4> vx = ctx.psi.dx[k], vy = ctx.psi.dy[k];
        if (!inside[k]) {
            if (hemis) {
                vx = reflect_hyperplane_raw(cap.center.x, vx);
                vy = reflect_hyperplane_raw(cap.center.x, vy);
            } else {
                const Vec<4> pre = mobius_inverse_raw(gen, ctx.psi.values[k]);
                const Vec<4> z = ctx.psi.values[k];
                Vec<4> wx = gen.pull(pre, z, vx);
                Vec<4> wy = gen.pull(pre, z, vy);
                wx = reflect_hyperplane_raw(cap.center.x, wx);
                wy = reflect_hyperplane_raw(cap.center.x, wy);
                const Vec<4> rp = reflect_hyperplane_raw(cap.center.x, pre);
                vx = gen.push(rp, folded[k], wx);
                vy = gen.push(rp, folded[k], wy);
            }
        }
        const Vec<4> q = outer.apply(folded[k]);
        const double dens =
            norm_sq(outer.push(folded[k], q, vx)) + norm_sq(outer.push(folded[k], q, vy));
        const double cell = dens * ctx.grid.weight();
        split.total += cell;
        if (inside[k])
            split.inside += cell;
        else
            split.outside += cell;
    }
    return split;
}

struct RayleighReport {
    Vec<4> component_means{};
    Vec<4> f1_correlations{};
    double sum_component_energies = 0.0;  // half the folded energy integrand
    double rayleigh_bound = 0.0;          // sum of energies / mass
    double sup_energy = 0.0;              // optimizer value for sup E(phi o Psi)
};

/// Admissibility of the folded coordinates as trial functions, plus the
/// Rayleigh bound they produce against twice the energy supremum.
inline RayleighReport rayleigh_report(const TrialContext& ctx, const Cap<4>& cap) {
    RayleighReport rep;
    const FoldEnergySplit split = fold_energy_split(ctx, cap);
    const std::vector<Vec<4>> folded = detail::folded_values(ctx, cap);
    const MobiusMap<4> outer(split.xi_c);
    for (std::size_t k = 0; k < folded.size(); ++k) {
        const Vec<4> w = outer.apply(folded[k]);
        axpy(rep.component_means, ctx.grid.weight(), w);
        axpy(rep.f1_correlations, ctx.f1[k] * ctx.grid.weight(), w);
    }
    rep.sum_component_energies = 0.5 * split.total;
    rep.rayleigh_bound = rep.sum_component_energies / ctx.mass;

    const CliffordEmbedding emb(ctx.params, ctx.r);
    const MapSample<4> base = sample_embedding(ctx.grid, emb);
    rep.sup_energy = sup_energy_over_ball(base, ctx.grid).value;
    return rep;
}

}  // namespace torusbound
