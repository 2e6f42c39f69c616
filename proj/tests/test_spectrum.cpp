#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "torusbound/flat_spectrum.hpp"

using namespace torusbound;

namespace {

// Brute-force oracle over the half-lattice window p, q in [-3, 3].
std::vector<std::pair<double, int>> brute_force_entries(const TorusParams& params) {
    std::vector<std::pair<double, Mode>> raw;
    for (int q = 0; q <= 3; ++q)
        for (int p = -3; p <= 3; ++p) {
            const Mode m{p, q};
            if (!is_valid_mode(m)) continue;
            raw.emplace_back(mode_eigenvalue(params, m), m);
        }
    std::sort(raw.begin(), raw.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    std::vector<std::pair<double, int>> merged;
    for (const auto& [lam, m] : raw) {
        if (!merged.empty() && nearly_equal(merged.back().first, lam, 1e-9))
            merged.back().second += mode_multiplicity(m);
        else
            merged.emplace_back(lam, mode_multiplicity(m));
    }
    return merged;
}

}  // namespace

TEST_CASE("mode eigenvalue closed form") {
    CHECK(mode_eigenvalue({0.0, 1.0}, {0, 0}) == 0.0);
    CHECK(mode_eigenvalue({0.0, 1.0}, {1, 0}) == Catch::Approx(4.0 * kPi * kPi).epsilon(1e-15));
    CHECK(mode_eigenvalue({0.5, std::sqrt(3.0) / 2.0}, {0, 1}) ==
          Catch::Approx(16.0 * kPi * kPi / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(mode_eigenvalue({0.0, 1.0}, {-1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(mode_eigenvalue({0.0, 1.0}, {2, -1}), std::invalid_argument);
}

TEST_CASE("spectrum enumeration against brute force") {
    for (const TorusParams& p :
         {TorusParams{0.0, 1.0}, TorusParams{0.5, std::sqrt(3.0) / 2.0}, TorusParams{0.0, 2.0}}) {
        const SpectrumList spec = enumerate_spectrum(p, 8);
        const auto oracle = brute_force_entries(p);
        REQUIRE(spec.entries.size() >= 3);
        for (std::size_t e = 0; e < 3; ++e) {
            CHECK(spec.entries[e].eigenvalue ==
                  Catch::Approx(oracle[e].first).margin(1e-12).epsilon(1e-12));
            CHECK(spec.entries[e].multiplicity == oracle[e].second);
        }
    }
}

TEST_CASE("spectrum landmark values") {
    {
        const SpectrumList spec = enumerate_spectrum({0.0, 1.0}, 2);
        CHECK(spec.entries[0].eigenvalue == 0.0);
        CHECK(spec.entries[0].multiplicity == 1);
        CHECK(spec.entries[1].eigenvalue == Catch::Approx(4.0 * kPi * kPi));
        CHECK(spec.entries[1].multiplicity == 4);
        CHECK(spec.eigenvalue_at(1) == Catch::Approx(4.0 * kPi * kPi));
        CHECK(spec.eigenvalue_at(2) == Catch::Approx(4.0 * kPi * kPi));
    }
    {
        const SpectrumList spec = enumerate_spectrum({0.5, std::sqrt(3.0) / 2.0}, 1);
        CHECK(spec.entries[1].eigenvalue == Catch::Approx(16.0 * kPi * kPi / 3.0));
        CHECK(spec.entries[1].multiplicity == 6);
    }
    {
        const SpectrumList spec = enumerate_spectrum({0.0, 2.0}, 1);
        CHECK(spec.entries[1].eigenvalue == Catch::Approx(kPi * kPi));
    }
}

TEST_CASE("normalized eigenvalues") {
    CHECK(normalized_eigenvalue({0.0, 1.0}, 2) == Catch::Approx(4.0 * kPi * kPi));
    CHECK(normalized_eigenvalue({0.5, std::sqrt(3.0) / 2.0}, 1) ==
          Catch::Approx(8.0 * kPi * kPi / std::sqrt(3.0)));
    CHECK(normalized_eigenvalue({0.0, 1.0}, 0) == 0.0);
}

TEST_CASE("enumeration extends without changing earlier entries") {
    const TorusParams p{0.3, 1.2};
    const SpectrumList small = enumerate_spectrum(p, 5);
    const SpectrumList big = enumerate_spectrum(p, 25);
    REQUIRE(big.entries.size() >= small.entries.size());
    for (std::size_t e = 0; e < small.entries.size(); ++e) {
        CHECK(big.entries[e].eigenvalue == Catch::Approx(small.entries[e].eigenvalue));
        CHECK(big.entries[e].multiplicity == small.entries[e].multiplicity);
    }
}

TEST_CASE("eigenfunction values and periodicity") {
    CHECK(eigenfunction_eval({0.0, 1.0}, {1, 0}, Parity::Cos, 0.0, 0.0) == 1.0);
    for (double y : {0.0, 0.37, 2.1})
        CHECK(std::abs(eigenfunction_eval({0.0, 1.0}, {0, 1}, Parity::Cos, 0.25, y)) < 1e-15);

    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    const TorusParams p{0.3, 1.2};
    for (int k = 0; k < 20; ++k) {
        const Mode m{k % 4, 1 + k % 3};
        const double x = unif(rng), y = unif(rng);
        for (Parity par : {Parity::Cos, Parity::Sin}) {
            const double v = eigenfunction_eval(p, m, par, x, y);
            CHECK(eigenfunction_eval(p, m, par, x + 1.0, y) == Catch::Approx(v).margin(1e-12));
            CHECK(eigenfunction_eval(p, m, par, x + p.a, y + p.b) ==
                  Catch::Approx(v).margin(1e-12));
        }
    }
}

TEST_CASE("central-difference Laplacian matches the eigenvalue") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const TorusParams p{0.3, 1.2};
    for (int k = 0; k < 5; ++k) {
        const Mode m{1 + k % 3, 1 + (k + 1) % 2};
        const double lam = mode_eigenvalue(p, m);
        const double x = unif(rng), y = unif(rng) * p.b;
        const auto f = [&](double xx, double yy) {
            return eigenfunction_eval(p, m, Parity::Cos, xx, yy);
        };
        auto laplace_err = [&](double h) {
            const double lap = (f(x + h, y) - 2.0 * f(x, y) + f(x - h, y)) / (h * h) +
                               (f(x, y + h) - 2.0 * f(x, y) + f(x, y - h)) / (h * h);
            return std::abs(lap + lam * f(x, y));
        };
        const double e1 = laplace_err(1e-3);
        const double e2 = laplace_err(5e-4);
        if (e1 > 1e-6)  // skip points where the function value is tiny
            CHECK(e1 / e2 > 3.8);
    }
}
