#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "torusbound/core.hpp"
#include "torusbound/moduli.hpp"

namespace torusbound {

// ---------------------------------------------------------------------------
// Exact Laplace spectrum of the flat torus R^2 / (Z(1,0) + Z(a,b)):
//   lambda_{p,q} = 4 pi^2 ( q^2 + ((p - q a)/b)^2 )
// indexed over the half-lattice q > 0, or q = 0 and p >= 0. Each mode other
// than (0,0) carries a cosine/sine eigenfunction pair.
// ---------------------------------------------------------------------------

struct Mode {
    int p = 0;
    int q = 0;

    bool operator==(const Mode&) const = default;
};

enum class Parity { Cos, Sin };

inline bool is_valid_mode(const Mode& m) {
    return m.q > 0 || (m.q == 0 && m.p >= 0);
}

inline void require_valid(const Mode& m) {
    if (!is_valid_mode(m))
        throw std::invalid_argument("Mode: index must satisfy q > 0, or q = 0 and p >= 0");
}

inline double mode_eigenvalue(const TorusParams& params, const Mode& m) {
    require_valid(params, "mode_eigenvalue");
    require_valid(m);
    const double f = (m.p - m.q * params.a) / params.b;
    return 4.0 * kPi * kPi * (m.q * m.q + f * f);
}

/// Frequency vector of the mode in Cartesian torus coordinates (x, y):
/// the eigenfunctions are cos/sin of 2 pi <freq, (x,y)>.
inline Vec<2> mode_frequency(const TorusParams& params, const Mode& m) {
    return {static_cast<double>(m.q), (m.p - m.q * params.a) / params.b};
}

inline int mode_multiplicity(const Mode& m) {
    return (m.p == 0 && m.q == 0) ? 1 : 2;
}

inline double eigenfunction_eval(const TorusParams& params, const Mode& m, Parity parity,
                                 double x, double y) {
    const Vec<2> f = mode_frequency(params, m);
    const double phase = kTwoPi * (f[0] * x + f[1] * y);
    return parity == Parity::Cos ? std::cos(phase) : std::sin(phase);
}

struct SpectrumEntry {
    double eigenvalue = 0.0;
    int multiplicity = 0;
    std::vector<Mode> modes;
};

struct SpectrumList {
    std::vector<SpectrumEntry> entries;

    int total_multiplicity() const {
        int m = 0;
        for (const auto& e : entries) m += e.multiplicity;
        return m;
    }

    /// k-th eigenvalue of the multiplicity-expanded sequence, k = 0 giving 0.
    double eigenvalue_at(int k) const {
        int seen = 0;
        for (const auto& e : entries) {
            seen += e.multiplicity;
            if (k < seen) return e.eigenvalue;
        }
        throw std::out_of_range("SpectrumList: index beyond enumerated range");
    }
};

/// Enumerates all modes with eigenvalue <= cut, doubling the cutoff until the
/// multiplicity-expanded list covers index k. Within a cutoff, completeness
/// follows from |q| <= sqrt(cut)/(2 pi) and |p - q a| <= b sqrt(cut)/(2 pi).
inline SpectrumList enumerate_spectrum(const TorusParams& params, int k,
                                       double merge_rel_tol = 1e-9) {
    require_valid(params, "enumerate_spectrum");
    if (k < 0) throw std::invalid_argument("enumerate_spectrum: k must be >= 0");
    if (k > 10000) throw std::invalid_argument("enumerate_spectrum: k exceeds guard (10000)");

    double cut = 4.0 * kPi * kPi * std::max(1.0, 1.0 / (params.b * params.b));
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<std::pair<double, Mode>> found;
        const double qmax = std::sqrt(cut) / kTwoPi;
        const double pspan = params.b * std::sqrt(cut) / kTwoPi;
        for (int q = 0; q <= static_cast<int>(qmax) + 1; ++q) {
            const double pc = q * params.a;
            const int plo = q == 0 ? 0 : static_cast<int>(std::floor(pc - pspan)) - 1;
            const int phi = static_cast<int>(std::ceil(pc + pspan)) + 1;
            for (int p = plo; p <= phi; ++p) {
                const Mode m{p, q};
                if (!is_valid_mode(m)) continue;
                const double lam = mode_eigenvalue(params, m);
                if (lam <= cut) found.emplace_back(lam, m);
            }
        }
        std::sort(found.begin(), found.end(), [](const auto& l, const auto& r) {
            return std::tie(l.first, l.second.q, l.second.p) <
                   std::tie(r.first, r.second.q, r.second.p);
        });

        SpectrumList out;
        for (const auto& [lam, m] : found) {
            if (!out.entries.empty() &&
                nearly_equal(out.entries.back().eigenvalue, lam, merge_rel_tol)) {
                out.entries.back().multiplicity += mode_multiplicity(m);
                out.entries.back().modes.push_back(m);
            } else {
                out.entries.push_back({lam, mode_multiplicity(m), {m}});
            }
        }
        // an entry whose merge window straddles the cutoff may be missing
        // modes; drop it and let the next doubling collect it completely
        while (!out.entries.empty() &&
               out.entries.back().eigenvalue > cut * (1.0 - 10.0 * merge_rel_tol))
            out.entries.pop_back();
        if (out.total_multiplicity() > k) return out;
        cut *= 2.0;
    }
    throw numeric_error("enumerate_spectrum: cutoff doubling failed to cover requested index");
}

/// Scale-invariant normalized eigenvalue: lambda_k * Area = lambda_k * b.
inline double normalized_eigenvalue(const TorusParams& params, int k) {
    return enumerate_spectrum(params, k).eigenvalue_at(k) * flat_area(params);
}

}  // namespace torusbound
