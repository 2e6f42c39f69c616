#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "torusbound/core.hpp"

namespace torusbound {

/// Dense symmetric matrix, full row-major storage.
struct SymMatrix {
    int n = 0;
    std::vector<double> a;

    SymMatrix() = default;
    explicit SymMatrix(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, 0.0) {}

    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    void set_sym(int i, int j, double v) {
        at(i, j) = v;
        at(j, i) = v;
    }

    double max_asymmetry() const {
        double worst = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                worst = std::max(worst, std::abs(at(i, j) - at(j, i)));
        return worst;
    }
};

/// Lower Cholesky factor of a symmetric positive definite matrix.
inline std::vector<double> cholesky_lower(const SymMatrix& m) {
    const int n = m.n;
    std::vector<double> l(static_cast<std::size_t>(n) * n, 0.0);
    auto L = [&](int i, int j) -> double& { return l[static_cast<std::size_t>(i) * n + j]; };
    for (int j = 0; j < n; ++j) {
        double d = m.at(j, j);
        for (int k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
        if (!(d > 0.0))
            throw numeric_error("cholesky_lower: matrix is not positive definite");
        L(j, j) = std::sqrt(d);
        for (int i = j + 1; i < n; ++i) {
            double s = m.at(i, j);
            for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
            L(i, j) = s / L(j, j);
        }
    }
    return l;
}

struct EigenResult {
    std::vector<double> values;                // ascending
    std::vector<std::vector<double>> vectors;  // vectors[k] pairs with values[k]
};

/// Cyclic Jacobi rotations for a dense symmetric matrix. Sweeps until the
/// off-diagonal Frobenius norm drops below 1e-12 relative to the matrix norm.
inline EigenResult jacobi_eigen(SymMatrix m, bool want_vectors, int max_sweeps = 100) {
    const int n = m.n;
    std::vector<double> v;
    if (want_vectors) {
        v.assign(static_cast<std::size_t>(n) * n, 0.0);
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * n + i] = 1.0;
    }
    auto V = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(i) * n + j]; };

    double norm_all = 0.0;
    for (double x : m.a) norm_all += x * x;
    norm_all = std::sqrt(norm_all);
    const double stop = 1e-12 * std::max(norm_all, 1e-300);

    auto off_norm = [&] {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += 2.0 * m.at(i, j) * m.at(i, j);
        return std::sqrt(s);
    };

    int sweep = 0;
    for (; sweep < max_sweeps && off_norm() > stop; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = m.at(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double app = m.at(p, p), aqq = m.at(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = m.at(k, p), akq = m.at(k, q);
                    m.at(k, p) = c * akp - s * akq;
                    m.at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = m.at(p, k), aqk = m.at(q, k);
                    m.at(p, k) = c * apk - s * aqk;
                    m.at(q, k) = s * apk + c * aqk;
                }
                if (want_vectors) {
                    for (int k = 0; k < n; ++k) {
                        const double vkp = V(k, p), vkq = V(k, q);
                        V(k, p) = c * vkp - s * vkq;
                        V(k, q) = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
    if (off_norm() > stop)
        throw numeric_error("jacobi_eigen: no convergence within the sweep limit");

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int l, int r) { return m.at(l, l) < m.at(r, r); });

    EigenResult out;
    out.values.resize(n);
    for (int i = 0; i < n; ++i) out.values[i] = m.at(order[i], order[i]);
    if (want_vectors) {
        out.vectors.assign(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) out.vectors[i][k] = V(k, order[i]);
    }
    return out;
}

/// Generalized symmetric eigenproblem K x = lambda M x with diagonal K:
/// Cholesky of M, transform to standard form, Jacobi, back-substitute.
inline EigenResult generalized_eigen_diag(const std::vector<double>& k_diag, const SymMatrix& m,
                                          bool want_vectors) {
    const int n = m.n;
    if (static_cast<int>(k_diag.size()) != n)
        throw std::invalid_argument("generalized_eigen_diag: dimension mismatch");
    const std::vector<double> l = cholesky_lower(m);
    auto L = [&](int i, int j) { return l[static_cast<std::size_t>(i) * n + j]; };

    // A = L^{-1} diag(k) L^{-T}: forward-substitute columns of diag(k),
    // then forward-substitute again on the transposed result.
    std::vector<double> y(static_cast<std::size_t>(n) * n, 0.0);
    auto Y = [&](int i, int j) -> double& { return y[static_cast<std::size_t>(i) * n + j]; };
    for (int col = 0; col < n; ++col) {
        for (int i = 0; i < n; ++i) {
            double s = i == col ? k_diag[col] : 0.0;
            for (int k = 0; k < i; ++k) s -= L(i, k) * Y(k, col);
            Y(i, col) = s / L(i, i);
        }
    }
    SymMatrix a(n);
    for (int row = 0; row < n; ++row) {
        // solve L z = Y(row, :)^T
        std::vector<double> z(n);
        for (int i = 0; i < n; ++i) {
            double s = Y(row, i);
            for (int k = 0; k < i; ++k) s -= L(i, k) * z[k];
            z[i] = s / L(i, i);
        }
        for (int coli = 0; coli < n; ++coli) a.at(row, coli) = z[coli];
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double sym = 0.5 * (a.at(i, j) + a.at(j, i));
            a.at(i, j) = sym;
            a.at(j, i) = sym;
        }

    EigenResult res = jacobi_eigen(a, want_vectors);
    if (want_vectors) {
        // x = L^{-T} v, by back substitution
        for (auto& vec : res.vectors) {
            std::vector<double> x(n);
            for (int i = n - 1; i >= 0; --i) {
                double s = vec[i];
                for (int k = i + 1; k < n; ++k) s -= L(k, i) * x[k];
                x[i] = s / L(i, i);
            }
            vec = x;
        }
    }
    return res;
}

}  // namespace torusbound
