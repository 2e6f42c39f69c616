#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include "torusbound/core.hpp"
#include "torusbound/moduli.hpp"

namespace torusbound {

// ---------------------------------------------------------------------------
// Closed-form upper bound for the second normalized eigenvalue in the
// conformal class of the flat torus T_{a,b}, together with the quantities
// appearing in its derivation:
//
//   s  = a^2 + b^2
//   S  = sqrt(s (8 + s))
//   U  = 16 pi^2 / (3 sqrt(6) b) * sqrt(2 + s + S)/(s + S) * (3 s + S)
//   F(r) = 16 pi^2 (s (1-r) + r) / (3 sqrt(3) b r sqrt(1-r)),  2/3 < r < 1
//   r0 = (3 s - S) / (2 (s - 1)),  with the limit 2/3 as s -> 1
//
// U equals F(r0) and also min{ 8 pi^2 (s+2)/(3b), F(r0) }.
// ---------------------------------------------------------------------------

struct BoundBreakdown {
    double a = 0.0;
    double b = 0.0;
    double s = 0.0;          // a^2 + b^2
    double big_s = 0.0;      // sqrt(s (8 + s))
    double r0 = 0.0;         // minimizer of F, 2/3 in the degenerate s = 1 case
    double low_branch = 0.0; // 8 pi^2 (s + 2) / (3 b)
    double f_at_r0 = 0.0;
    double u = 0.0;
};

inline double upper_bound_u(const TorusParams& p) {
    require_valid(p, "upper_bound_u");
    const double s = p.a * p.a + p.b * p.b;
    const double S = std::sqrt(s * (8.0 + s));
    return 16.0 * kPi * kPi / (3.0 * std::sqrt(6.0) * p.b) *
           std::sqrt(2.0 + s + S) / (s + S) * (3.0 * s + S);
}

inline double profile_f(const TorusParams& p, double r) {
    require_valid(p, "profile_f");
    if (!(r > 2.0 / 3.0 && r < 1.0))
        throw std::invalid_argument("profile_f: r must lie in (2/3, 1)");
    const double s = p.a * p.a + p.b * p.b;
    return 16.0 * kPi * kPi * (s * (1.0 - r) + r) /
           (3.0 * std::sqrt(3.0) * p.b * r * std::sqrt(1.0 - r));
}

inline double r_star(const TorusParams& p) {
    require_valid(p, "r_star");
    const double s = p.a * p.a + p.b * p.b;
    if (std::abs(s - 1.0) < 1e-9) return 2.0 / 3.0;
    return (3.0 * s - std::sqrt(s * (s + 8.0))) / (2.0 * (s - 1.0));
}

inline double branch_bound_low(const TorusParams& p) {
    require_valid(p, "branch_bound_low");
    const double s = p.a * p.a + p.b * p.b;
    return 8.0 * kPi * kPi * (s + 2.0) / (3.0 * p.b);
}

inline BoundBreakdown bound_breakdown(const TorusParams& p) {
    BoundBreakdown out;
    out.a = p.a;
    out.b = p.b;
    out.s = p.a * p.a + p.b * p.b;
    out.big_s = std::sqrt(out.s * (8.0 + out.s));
    out.r0 = r_star(p);
    out.low_branch = branch_bound_low(p);
    out.u = upper_bound_u(p);
    // F is singular to evaluate at the boundary r0 = 2/3; U extends it by
    // continuity, so the breakdown reports U there.
    out.f_at_r0 = out.r0 > 2.0 / 3.0 + 1e-12 ? profile_f(p, out.r0) : out.u;
    return out;
}

/// Conformal area of T_{a,b}: explicit two-branch formula, split at
/// a^2 + b^2 - a = 2 (the branches agree on the interface).
inline double conformal_area(const TorusParams& p) {
    require_valid(p, "conformal_area");
    const double d = p.b * p.b + p.a * p.a - p.a;
    if (d <= 2.0 + 1e-12)
        return 4.0 * kPi * kPi * p.b / (1.0 + d);
    return 8.0 * kPi * kPi * p.b * std::sqrt(1.0 + d) / (3.0 * std::sqrt(3.0) * d);
}

// Closed-form partial derivatives of U. dU/da carries a leading factor a and
// vanishes on the a = 0 edge; dU/db is negative throughout the region.
inline double partial_du_da(const TorusParams& p) {
    require_valid(p, "partial_du_da");
    const double A = p.a * p.a, B = p.b * p.b;
    const double s = A + B;
    const double S = std::sqrt(s * (8.0 + s));
    const double poly = A * A + 2.0 * A * B + A * S + 9.0 * A + B * B + B * S + 9.0 * B +
                        5.0 * S + 8.0;
    return 128.0 * kPi * kPi * p.a * s * poly /
           (3.0 * std::sqrt(6.0) * p.b * S * (s + S) * (s + S) * std::sqrt(s + S + 2.0));
}

inline double partial_du_db(const TorusParams& p) {
    require_valid(p, "partial_du_db");
    const double A = p.a * p.a, B = p.b * p.b;
    const double s = A + B;
    const double S = std::sqrt(s * (8.0 + s));
    const double poly = A * A * A + 2.0 * A * A * B + A * A * S + 10.0 * A * A + A * B * B +
                        A * B * S + 11.0 * A * B + 6.0 * A * S + 16.0 * A + B * B + B * S +
                        8.0 * B + 2.0 * S;
    return -128.0 * kPi * kPi * s * poly /
           (3.0 * std::sqrt(6.0) * B * S * (s + S) * (s + S) * std::sqrt(s + S + 2.0));
}

/// Conjectured supremum of the second normalized eigenvalue over all
/// conformal classes of the torus.
inline double conjecture_target() {
    return 8.0 * kPi * kPi / std::sqrt(3.0) + 8.0 * kPi;
}

/// U(params) minus the conjectured supremum; negative means the bound
/// certifies the inequality for every metric in this conformal class.
inline double conjecture_margin(const TorusParams& p) {
    return upper_bound_u(p) - conjecture_target();
}

/// Root of U(a, b) = target in b, by bisection on [sqrt(1-a^2), 100].
/// Well-posed because U is strictly decreasing in b.
inline double threshold_b(double a, double target, double tol = 1e-10) {
    if (!(a >= 0.0 && a <= 0.5))
        throw std::invalid_argument("threshold_b: a must lie in [0, 1/2]");
    double lo = std::sqrt(1.0 - a * a);
    double hi = 100.0;
    const auto f = [a](double b) { return upper_bound_u({a, b}); };
    const double flo = f(lo), fhi = f(hi);
    if (nearly_equal(flo, target, 1e-13)) return lo;
    if (nearly_equal(fhi, target, 1e-13)) return hi;
    if (!(flo > target && target > fhi))
        throw numeric_error("threshold_b: no crossing of target on [sqrt(1-a^2), 100]");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// U / A_c at one point of the first conformal-area branch.
inline double remark_ratio(const TorusParams& p) {
    require_valid(p, "remark_ratio");
    const double d = p.b * p.b + p.a * p.a - p.a;
    if (d > 2.0 + 1e-12)
        throw std::invalid_argument("remark_ratio: requires a^2 + b^2 - a <= 2");
    return upper_bound_u(p) / conformal_area(p);
}

struct RemarkScan {
    double sup_ratio = 0.0;
    double arg_a = 0.0;
    double arg_b = 0.0;
    int points = 0;
};

/// Scans U / A_c over {a^2 + b^2 - a <= 2} intersected with the fundamental
/// region and reports the measured supremum. The result is reported, never
/// asserted against a constant: see the verify suite output.
inline RemarkScan remark_ratio_scan(int steps = 200) {
    if (steps < 2) throw std::invalid_argument("remark_ratio_scan: steps must be >= 2");
    RemarkScan out;
    for (int i = 0; i < steps; ++i) {
        const double a = 0.5 * i / (steps - 1);
        const double blo = std::sqrt(1.0 - a * a);
        // a^2 + b^2 - a <= 2  <=>  b <= sqrt(2 + a - a^2)
        const double bhi = std::sqrt(2.0 + a - a * a);
        for (int j = 0; j < steps; ++j) {
            const double b = blo + (bhi - blo) * j / (steps - 1);
            const double ratio = remark_ratio({a, b});
            ++out.points;
            if (ratio > out.sup_ratio) {
                out.sup_ratio = ratio;
                out.arg_a = a;
                out.arg_b = b;
            }
        }
    }
    return out;
}

}  // namespace torusbound
