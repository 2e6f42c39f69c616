#include <catch_amalgamated.hpp>

#include <cmath>

#include "torusbound/bounds.hpp"
#include "torusbound/optim.hpp"

using namespace torusbound;

namespace {
const double kSqrt3 = std::sqrt(3.0);
const TorusParams kEquilateral{0.5, kSqrt3 / 2.0};
}  // namespace

TEST_CASE("closed-form bound at the corners") {
    CHECK(std::abs(upper_bound_u(kEquilateral) - 16.0 * kPi * kPi / kSqrt3) < 1e-10);
    CHECK(std::abs(upper_bound_u({0.0, 1.0}) - 8.0 * kPi * kPi) < 1e-10);
    CHECK_THROWS_AS(upper_bound_u({0.0, -1.0}), std::invalid_argument);
}

TEST_CASE("bound tends to a constant for long thin tori") {
    // large-b expansion of the closed form: U(0, b) -> 32 pi^2 / (3 sqrt(3))
    const double limit = 32.0 * kPi * kPi / (3.0 * kSqrt3);
    CHECK(std::abs(upper_bound_u({0.0, 100.0}) - limit) / limit < 0.01);
    CHECK(std::abs(upper_bound_u({0.0, 1000.0}) - limit) / limit < 1e-4);
}

TEST_CASE("profile function and its minimizer") {
    const double eps = 1e-9;
    CHECK(profile_f({0.0, 1.0}, 2.0 / 3.0 + eps) == Catch::Approx(8.0 * kPi * kPi).epsilon(1e-7));
    CHECK(profile_f(kEquilateral, 2.0 / 3.0 + eps) ==
          Catch::Approx(16.0 * kPi * kPi / kSqrt3).epsilon(1e-7));
    CHECK_THROWS_AS(profile_f({0.0, 1.0}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(profile_f({0.0, 1.0}, 1.0), std::invalid_argument);

    CHECK(r_star({0.0, 1.0}) == Catch::Approx(2.0 / 3.0));
    CHECK(r_star(kEquilateral) == Catch::Approx(2.0 / 3.0));
    CHECK(r_star({0.0, 2.0}) == Catch::Approx(2.0 - 2.0 / kSqrt3).epsilon(1e-14));

    // numeric limit along s -> 1 of the closed form for the minimizer
    for (double ds : {1e-4, 1e-5}) {
        const double b = std::sqrt(1.0 + ds);
        CHECK(std::abs(r_star({0.0, b}) - 2.0 / 3.0) < 0.2 * ds + 1e-9);
    }

    // golden-section oracle for the interior minimizer
    for (const TorusParams& p : {TorusParams{0.3, 1.5}, TorusParams{0.0, 2.0}}) {
        const double rg = golden_section_min([&](double r) { return profile_f(p, r); },
                                             2.0 / 3.0 + 1e-9, 1.0 - 1e-9, 1e-12);
        CHECK(std::abs(rg - r_star(p)) < 1e-8);
        CHECK(profile_f(p, r_star(p)) == Catch::Approx(upper_bound_u(p)).epsilon(1e-12));
    }
}

TEST_CASE("low branch of the two-branch minimum") {
    CHECK(branch_bound_low({0.0, 1.0}) == Catch::Approx(8.0 * kPi * kPi));
    CHECK(branch_bound_low(kEquilateral) == Catch::Approx(16.0 * kPi * kPi / kSqrt3));
    // direct substitution s = 4, b = 2: 8 pi^2 (4 + 2) / 6 = 8 pi^2
    CHECK(branch_bound_low({0.0, 2.0}) == Catch::Approx(8.0 * kPi * kPi));

    for (const TorusParams& p : {TorusParams{0.1, 1.3}, TorusParams{0.4, 2.2}}) {
        const BoundBreakdown bd = bound_breakdown(p);
        CHECK(bd.f_at_r0 <= bd.low_branch + 1e-9);
        CHECK(bd.u == Catch::Approx(bd.f_at_r0));
    }
}

TEST_CASE("conformal area branches") {
    CHECK(conformal_area({0.0, 1.0}) == Catch::Approx(2.0 * kPi * kPi).epsilon(1e-14));
    CHECK(conformal_area(kEquilateral) ==
          Catch::Approx(4.0 * kPi * kPi / kSqrt3).epsilon(1e-14));
    CHECK(conformal_area({0.0, 2.0}) ==
          Catch::Approx(4.0 * kPi * kPi * std::sqrt(5.0) / (3.0 * kSqrt3)).epsilon(1e-14));

    // the two branches agree on the interface a^2 + b^2 - a = 2
    for (double a : {0.0, 0.25, 0.5}) {
        const double b = std::sqrt(2.0 + a - a * a);
        const double first = 4.0 * kPi * kPi * b / 3.0;
        const double second = 8.0 * kPi * kPi * b * std::sqrt(3.0) / (3.0 * kSqrt3 * 2.0);
        CHECK(first == Catch::Approx(second).epsilon(1e-14));
        CHECK(conformal_area({a, b}) == Catch::Approx(first).epsilon(1e-12));
    }
}

TEST_CASE("partial derivatives match finite differences") {
    CHECK(partial_du_da({0.0, 1.4}) == 0.0);
    for (const TorusParams& p : {TorusParams{0.3, 1.5}, TorusParams{0.15, 1.1},
                                 TorusParams{0.45, 2.4}}) {
        const double h = 1e-5;
        const double fda = (upper_bound_u({p.a + h, p.b}) - upper_bound_u({p.a - h, p.b})) / (2 * h);
        const double fdb = (upper_bound_u({p.a, p.b + h}) - upper_bound_u({p.a, p.b - h})) / (2 * h);
        CHECK(std::abs(partial_du_da(p) - fda) < 1e-6 * std::max(1.0, std::abs(fda)));
        CHECK(std::abs(partial_du_db(p) - fdb) < 1e-6 * std::max(1.0, std::abs(fdb)));
        CHECK(partial_du_da(p) > 0.0);
        CHECK(partial_du_db(p) < 0.0);
    }
}

TEST_CASE("conjecture margin") {
    const double target = conjecture_target();
    CHECK(conjecture_margin(kEquilateral) ==
          Catch::Approx(8.0 * kPi * kPi / kSqrt3 - 8.0 * kPi));
    CHECK(conjecture_margin(kEquilateral) > 0.0);
    CHECK(conjecture_margin({0.5, 1.8}) < 0.0);
    CHECK(conjecture_margin({0.0, 1.0}) ==
          Catch::Approx(8.0 * kPi * kPi - target).epsilon(1e-12));
    CHECK(conjecture_margin({0.0, 1.0}) == Catch::Approx(8.23834).epsilon(1e-4));
}

TEST_CASE("threshold solving by bisection") {
    const double root = threshold_b(0.5, conjecture_target());
    CHECK(root > 1.70);
    CHECK(root < 1.76);
    CHECK(std::abs(upper_bound_u({0.5, root}) - conjecture_target()) < 1e-7);

    CHECK(threshold_b(0.0, 8.0 * kPi * kPi) == Catch::Approx(1.0).margin(1e-8));
    CHECK(threshold_b(0.5, 16.0 * kPi * kPi / kSqrt3) ==
          Catch::Approx(kSqrt3 / 2.0).margin(1e-8));
    CHECK_THROWS_AS(threshold_b(0.0, 1e6), numeric_error);
}

TEST_CASE("ratio against the conformal area") {
    // both corners of the boundary arc give ratio exactly 4
    CHECK(remark_ratio({0.0, 1.0}) == Catch::Approx(4.0).epsilon(1e-12));
    CHECK(remark_ratio(kEquilateral) == Catch::Approx(4.0).epsilon(1e-12));
    CHECK_THROWS_AS(remark_ratio({0.0, 2.0}), std::invalid_argument);

    const RemarkScan scan = remark_ratio_scan(120);
    CHECK(scan.points == 120 * 120);
    CHECK(scan.sup_ratio >= 4.0 - 1e-9);   // attained at the arc corners
    CHECK(scan.sup_ratio <= 4.0 + 1e-9);   // measured: never exceeds 4 on the region
}
