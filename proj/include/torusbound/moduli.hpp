#pragma once

#include <cmath>
#include <stdexcept>

#include "torusbound/core.hpp"

namespace torusbound {

// ---------------------------------------------------------------------------
// Flat-torus moduli: lattice Z(1,0) + Z(a,b), fundamental region
//   0 <= a <= 1/2,  b >= sqrt(1 - a^2)
// ---------------------------------------------------------------------------

struct TorusParams {
    double a = 0.0;
    double b = 1.0;
};

inline void require_valid(const TorusParams& p, const char* where = "TorusParams") {
    if (!(p.b > 0.0) || !std::isfinite(p.a) || !std::isfinite(p.b))
        throw std::invalid_argument(std::string(where) + ": requires b > 0 and finite (a, b)");
}

struct LatticeBasis {
    Vec<2> v1{1.0, 0.0};
    Vec<2> v2{0.0, 1.0};
};

inline double basis_det(const LatticeBasis& basis) {
    return basis.v1[0] * basis.v2[1] - basis.v1[1] * basis.v2[0];
}

inline void require_independent(const LatticeBasis& basis) {
    const double scale = norm(basis.v1) * norm(basis.v2);
    if (!(std::abs(basis_det(basis)) > 1e-12 * scale))
        throw std::invalid_argument("LatticeBasis: generators are (nearly) dependent");
}

inline bool is_in_fundamental_region(const TorusParams& p, double tol = 1e-12) {
    require_valid(p, "is_in_fundamental_region");
    if (p.a < -tol || p.a > 0.5 + tol) return false;
    const double arc = std::sqrt(std::max(0.0, 1.0 - p.a * p.a));
    return p.b >= arc - tol;
}

struct ReducedLattice {
    TorusParams params;
    double scale = 1.0;  // input lattice is isometric to scale * (Z(1,0) + Z(a,b))
};

/// Gauss reduction of a rank-2 lattice basis to the fundamental region, up to
/// isometry and dilation. Alternates the translation a -> a - round(a) with
/// the inversion (a,b) -> (-a,b)/(a^2+b^2) until |tau| >= 1, then flips the
/// sign of a (an isometry) to land in a >= 0.
inline ReducedLattice reduce_to_fundamental(const LatticeBasis& basis) {
    require_independent(basis);

    Vec<2> u = basis.v1;
    Vec<2> w = basis.v2;
    if (norm_sq(w) < norm_sq(u)) std::swap(u, w);

    const double len = norm(u);
    double scale = len;
    // coordinates of w in the frame where u/|u| = (1,0)
    double a = dot(u, w) / norm_sq(u);
    double b = std::abs(u[0] * w[1] - u[1] * w[0]) / norm_sq(u);

    for (int iter = 0;; ++iter) {
        if (iter >= 200)
            throw numeric_error("reduce_to_fundamental: did not terminate in 200 steps");
        a -= std::round(a);
        const double n2 = a * a + b * b;
        if (n2 >= 1.0 - 1e-15) break;
        scale *= std::sqrt(n2);
        a = -a / n2;
        b = b / n2;
    }
    a = std::abs(a);
    // round-off guard at the a = 1/2 boundary
    if (a > 0.5) a = 0.5;
    return {TorusParams{a, b}, scale};
}

/// Area of the fundamental parallelogram of Z(1,0) + Z(a,b).
inline double flat_area(const TorusParams& p) {
    require_valid(p, "flat_area");
    return p.b;
}

}  // namespace torusbound
