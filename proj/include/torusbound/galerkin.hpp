#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "torusbound/bounds.hpp"
#include "torusbound/core.hpp"
#include "torusbound/flat_spectrum.hpp"
#include "torusbound/linalg.hpp"
#include "torusbound/moduli.hpp"

namespace torusbound {

// ---------------------------------------------------------------------------
// Fourier-Galerkin (Rayleigh-Ritz) solver for the conformally weighted
// problem  Delta u = lambda omega u  on T_{a,b}. The flat eigenfunctions are
// an L^2-orthonormal basis; the Dirichlet form stays diagonal (conformal
// invariance in dimension 2) while omega enters the mass matrix. Ritz values
// bound the true eigenvalues from above, so certified comparisons against
// the closed-form bound are conservative in the right direction.
//
// In lattice coordinates (s, t) = (x - a y / b, y / b) the basis functions
// are pure integer Fourier modes cos/sin(2 pi (q s + p t)), so mass entries
// reduce via product-to-sum identities to samples of the weighted Fourier
// transform of omega.
// ---------------------------------------------------------------------------

struct WeightFn {
    std::function<double(double x, double y)> eval;  // Cartesian torus coordinates
};

struct BasisFn {
    Mode mode;
    Parity parity = Parity::Cos;
    double lambda = 0.0;
};

struct GalerkinProblem {
    TorusParams params;
    std::vector<BasisFn> basis;
    std::vector<double> stiffness;  // diagonal: lambda per basis function
    SymMatrix mass;
    double area = 0.0;  // integral of omega
    int grid_n = 0;
};

namespace detail {

struct WeightTransform {
    int m1_max = 0, m2_max = 0;
    std::vector<double> cos_part, sin_part;  // indexed by (m1 + m1_max, m2 + m2_max)

    double c(int m1, int m2) const {
        return cos_part[static_cast<std::size_t>(m1 + m1_max) * (2 * m2_max + 1) + (m2 + m2_max)];
    }
    double s(int m1, int m2) const {
        return sin_part[static_cast<std::size_t>(m1 + m1_max) * (2 * m2_max + 1) + (m2 + m2_max)];
    }
};

/// Weighted Fourier sums W_c(m) = sum omega(u) cos(2 pi m . u) w and the
/// sine analogue, separably over the tensor grid.
inline WeightTransform weight_transform(const std::vector<double>& omega, int n, double cell_w,
                                        int m1_max, int m2_max) {
    WeightTransform wt;
    wt.m1_max = m1_max;
    wt.m2_max = m2_max;
    const int w1 = 2 * m1_max + 1, w2 = 2 * m2_max + 1;
    wt.cos_part.assign(static_cast<std::size_t>(w1) * w2, 0.0);
    wt.sin_part.assign(static_cast<std::size_t>(w1) * w2, 0.0);

    // row stage: R_c[m1][j] = sum_i omega(i,j) cos(2 pi m1 u_i), same for sin
    std::vector<double> rc(static_cast<std::size_t>(w1) * n, 0.0);
    std::vector<double> rs(static_cast<std::size_t>(w1) * n, 0.0);
    for (int m1 = -m1_max; m1 <= m1_max; ++m1) {
        const std::size_t row = static_cast<std::size_t>(m1 + m1_max) * n;
        for (int i = 0; i < n; ++i) {
            const double ang = kTwoPi * m1 * (i + 0.5) / n;
            const double cv = std::cos(ang), sv = std::sin(ang);
            for (int j = 0; j < n; ++j) {
                const double o = omega[static_cast<std::size_t>(i) * n + j];
                rc[row + j] += o * cv;
                rs[row + j] += o * sv;
            }
        }
    }
    for (int m1 = -m1_max; m1 <= m1_max; ++m1) {
        const std::size_t row = static_cast<std::size_t>(m1 + m1_max) * n;
        for (int m2 = -m2_max; m2 <= m2_max; ++m2) {
            double accc = 0.0, accs = 0.0;
            for (int j = 0; j < n; ++j) {
                const double ang = kTwoPi * m2 * (j + 0.5) / n;
                const double cv = std::cos(ang), sv = std::sin(ang);
                // cos(A+B), sin(A+B) from the row-stage partial sums
                accc += rc[row + j] * cv - rs[row + j] * sv;
                accs += rs[row + j] * cv + rc[row + j] * sv;
            }
            const std::size_t k =
                static_cast<std::size_t>(m1 + m1_max) * (2 * m2_max + 1) + (m2 + m2_max);
            wt.cos_part[k] = accc * cell_w;
            wt.sin_part[k] = accs * cell_w;
        }
    }
    return wt;
}

}  // namespace detail

/// Periodicity check of the weight against both lattice translations.
inline void require_lattice_periodic(const TorusParams& params, const WeightFn& weight,
                                     double tol = 1e-8) {
    const double probes[][2] = {{0.13, 0.29}, {0.61, 0.47}, {0.87, 0.05}};
    for (const auto& pr : probes) {
        const double x = pr[0], y = pr[1] * params.b;
        const double v = weight.eval(x, y);
        const double v1 = weight.eval(x + 1.0, y);
        const double v2 = weight.eval(x + params.a, y + params.b);
        const double scale = std::max(1.0, std::abs(v));
        if (std::abs(v1 - v) > tol * scale || std::abs(v2 - v) > tol * scale)
            throw std::invalid_argument("weight is not periodic under the torus lattice");
    }
}

inline GalerkinProblem assemble(const TorusParams& params, const WeightFn& weight, double cutoff,
                                int grid_n = 0) {
    require_valid(params, "assemble");
    require_lattice_periodic(params, weight);

    GalerkinProblem prob;
    prob.params = params;

    // basis: all half-lattice modes with lambda <= cutoff, cosine before sine
    {
        std::vector<std::pair<double, Mode>> found;
        const double qmax = std::sqrt(cutoff) / kTwoPi;
        const double pspan = params.b * std::sqrt(cutoff) / kTwoPi;
        for (int q = 0; q <= static_cast<int>(qmax) + 1; ++q) {
            const double pc = q * params.a;
            const int plo = q == 0 ? 0 : static_cast<int>(std::floor(pc - pspan)) - 1;
            const int phi = static_cast<int>(std::ceil(pc + pspan)) + 1;
            for (int p = plo; p <= phi; ++p) {
                const Mode m{p, q};
                if (!is_valid_mode(m)) continue;
                const double lam = mode_eigenvalue(params, m);
                if (lam <= cutoff) found.emplace_back(lam, m);
            }
        }
        std::sort(found.begin(), found.end(), [](const auto& l, const auto& r) {
            return std::tie(l.first, l.second.q, l.second.p) <
                   std::tie(r.first, r.second.q, r.second.p);
        });
        for (const auto& [lam, m] : found) {
            prob.basis.push_back({m, Parity::Cos, lam});
            if (mode_multiplicity(m) == 2) prob.basis.push_back({m, Parity::Sin, lam});
        }
    }
    const int nb = static_cast<int>(prob.basis.size());
    if (nb < 10)
        throw std::invalid_argument("assemble: cutoff too small, fewer than 10 basis functions");

    int qmax_i = 0, pmax_i = 0;
    for (const auto& bf : prob.basis) {
        qmax_i = std::max(qmax_i, std::abs(bf.mode.q));
        pmax_i = std::max(pmax_i, std::abs(bf.mode.p));
    }
    const int max_freq = std::max(qmax_i, pmax_i);
    const int n_floor = std::max(32, 4 * max_freq + 4);
    if (grid_n == 0) grid_n = n_floor;
    if (grid_n < 4 * max_freq)
        throw std::invalid_argument(
            "assemble: quadrature grid below the anti-aliasing floor (4 samples per oscillation)");
    prob.grid_n = grid_n;

    // omega sampled on the lattice-coordinate grid
    std::vector<double> omega(static_cast<std::size_t>(grid_n) * grid_n);
    double omega_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_n; ++i) {
        const double s = (i + 0.5) / grid_n;
        for (int j = 0; j < grid_n; ++j) {
            const double t = (j + 0.5) / grid_n;
            const double x = s + params.a * t, y = params.b * t;
            const double v = weight.eval(x, y);
            omega[static_cast<std::size_t>(i) * grid_n + j] = v;
            omega_min = std::min(omega_min, v);
        }
    }
    if (!(omega_min > 0.0))
        throw std::invalid_argument("assemble: weight must be strictly positive");

    const double cell_w = params.b / (static_cast<double>(grid_n) * grid_n);
    const detail::WeightTransform wt =
        detail::weight_transform(omega, grid_n, cell_w, 2 * qmax_i, 2 * pmax_i);
    prob.area = wt.c(0, 0);

    // basis normalization: 1/sqrt(b) for the constant, sqrt(2/b) otherwise
    std::vector<double> cnorm(nb);
    for (int i = 0; i < nb; ++i) {
        const bool constant = prob.basis[i].mode.p == 0 && prob.basis[i].mode.q == 0;
        cnorm[i] = constant ? 1.0 / std::sqrt(params.b) : std::sqrt(2.0 / params.b);
    }

    prob.stiffness.resize(nb);
    for (int i = 0; i < nb; ++i) prob.stiffness[i] = prob.basis[i].lambda;

    // mass entries via product-to-sum on (s,t)-frequencies (q, p)
    prob.mass = SymMatrix(nb);
    for (int i = 0; i < nb; ++i) {
        const int qi = prob.basis[i].mode.q, pi = prob.basis[i].mode.p;
        for (int j = i; j < nb; ++j) {
            const int qj = prob.basis[j].mode.q, pj = prob.basis[j].mode.p;
            const int dq = qi - qj, dp = pi - pj;
            const int sq = qi + qj, sp = pi + pj;
            const bool ci = prob.basis[i].parity == Parity::Cos;
            const bool cj = prob.basis[j].parity == Parity::Cos;
            double v = 0.0;
            if (ci && cj)
                v = 0.5 * (wt.c(dq, dp) + wt.c(sq, sp));
            else if (!ci && !cj)
                v = 0.5 * (wt.c(dq, dp) - wt.c(sq, sp));
            else if (!ci && cj)  // sin_i * cos_j
                v = 0.5 * (wt.s(dq, dp) + wt.s(sq, sp));
            else  // cos_i * sin_j
                v = 0.5 * (wt.s(-dq, -dp) + wt.s(sq, sp));
            prob.mass.set_sym(i, j, cnorm[i] * cnorm[j] * v);
        }
    }
    return prob;
}

/// Ascending Ritz values lambda_0 .. lambda_k.
inline std::vector<double> solve_generalized(const GalerkinProblem& prob, int k) {
    if (k < 0 || k >= prob.mass.n)
        throw std::invalid_argument("solve_generalized: index outside basis span");
    EigenResult res = generalized_eigen_diag(prob.stiffness, prob.mass, false);
    res.values.resize(k + 1);
    return res.values;
}

inline EigenResult solve_generalized_full(const GalerkinProblem& prob) {
    return generalized_eigen_diag(prob.stiffness, prob.mass, true);
}

/// Ritz lambda_k times the weighted area (both conservative upper bounds).
inline double normalized_lambda(const TorusParams& params, const WeightFn& weight, double cutoff,
                                int k) {
    const GalerkinProblem prob = assemble(params, weight, cutoff);
    return solve_generalized(prob, k)[k] * prob.area;
}

struct BoundCertificate {
    double lambda1_bar = 0.0;
    double lambda2_bar = 0.0;
    double upper_bound = 0.0;
    double margin = 0.0;  // upper_bound - lambda2_bar
    bool certified = false;
    bool lambda1_within_topological_bound = false;  // <= 8 pi^2/sqrt(3) + 1e-6
    bool lambda2_below_uniform_bound = false;       // < 16 pi^2/sqrt(3)
};

inline BoundCertificate bound_certificate(const TorusParams& params, const WeightFn& weight,
                                          double cutoff) {
    const GalerkinProblem prob = assemble(params, weight, cutoff);
    const std::vector<double> vals = solve_generalized(prob, 2);
    BoundCertificate cert;
    cert.lambda1_bar = vals[1] * prob.area;
    cert.lambda2_bar = vals[2] * prob.area;
    cert.upper_bound = upper_bound_u(params);
    cert.margin = cert.upper_bound - cert.lambda2_bar;
    cert.certified = cert.lambda2_bar < cert.upper_bound;
    cert.lambda1_within_topological_bound =
        cert.lambda1_bar <= 8.0 * kPi * kPi / std::sqrt(3.0) + 1e-6;
    cert.lambda2_below_uniform_bound = cert.lambda2_bar < 16.0 * kPi * kPi / std::sqrt(3.0);
    return cert;
}

}  // namespace torusbound
