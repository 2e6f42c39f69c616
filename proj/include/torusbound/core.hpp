#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace torusbound {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Thrown when an iterative method fails to converge or a root/extremum
/// cannot be bracketed. CLI maps this to exit code 4.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown on unreadable/unwritable paths. CLI maps this to exit code 3.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Small fixed-size vectors (ambient coordinates of S^{N-1} in R^N)
// ---------------------------------------------------------------------------

template <std::size_t N>
using Vec = std::array<double, N>;

template <std::size_t N>
constexpr double dot(const Vec<N>& a, const Vec<N>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += a[i] * b[i];
    return s;
}

template <std::size_t N>
constexpr double norm_sq(const Vec<N>& a) { return dot(a, a); }

template <std::size_t N>
double norm(const Vec<N>& a) { return std::sqrt(norm_sq(a)); }

template <std::size_t N>
constexpr Vec<N> add(const Vec<N>& a, const Vec<N>& b) {
    Vec<N> r{};
    for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + b[i];
    return r;
}

template <std::size_t N>
constexpr Vec<N> sub(const Vec<N>& a, const Vec<N>& b) {
    Vec<N> r{};
    for (std::size_t i = 0; i < N; ++i) r[i] = a[i] - b[i];
    return r;
}

template <std::size_t N>
constexpr Vec<N> scaled(const Vec<N>& a, double c) {
    Vec<N> r{};
    for (std::size_t i = 0; i < N; ++i) r[i] = c * a[i];
    return r;
}

// r += c * a
template <std::size_t N>
constexpr void axpy(Vec<N>& r, double c, const Vec<N>& a) {
    for (std::size_t i = 0; i < N; ++i) r[i] += c * a[i];
}

template <std::size_t N>
Vec<N> normalized(const Vec<N>& a) {
    const double n = norm(a);
    if (n < 1e-300) throw std::invalid_argument("cannot normalize zero vector");
    return scaled(a, 1.0 / n);
}

template <std::size_t N>
constexpr Vec<N> zero_vec() { return Vec<N>{}; }

template <std::size_t N>
constexpr Vec<N> basis_vec(std::size_t i, double c = 1.0) {
    Vec<N> r{};
    r[i] = c;
    return r;
}

// Gaussian elimination with partial pivoting for tiny dense systems.
template <std::size_t N>
Vec<N> solve_linear(std::array<Vec<N>, N> m, Vec<N> rhs) {
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < N; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) < 1e-300)
            throw numeric_error("solve_linear: singular matrix");
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        const double inv = 1.0 / m[col][col];
        for (std::size_t r = col + 1; r < N; ++r) {
            const double f = m[r][col] * inv;
            if (f == 0.0) continue;
            for (std::size_t c = col; c < N; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    Vec<N> x{};
    for (std::size_t ri = N; ri-- > 0;) {
        double s = rhs[ri];
        for (std::size_t c = ri + 1; c < N; ++c) s -= m[ri][c] * x[c];
        x[ri] = s / m[ri][ri];
    }
    return x;
}

inline bool nearly_equal(double a, double b, double rel_tol) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) <= rel_tol * scale;
}

}  // namespace torusbound
