#include <catch_amalgamated.hpp>

#include <cmath>

#include "torusbound/flat_spectrum.hpp"
#include "torusbound/galerkin.hpp"
#include "torusbound/linalg.hpp"
#include "torusbound/weight_expr.hpp"

using namespace torusbound;

namespace {
const WeightFn kUnit{[](double, double) { return 1.0; }};
}

TEST_CASE("unit weight gives the identity mass matrix") {
    const GalerkinProblem prob = assemble({0.0, 1.0}, kUnit, 4.0 * kPi * kPi * 6.0);
    REQUIRE(prob.mass.n >= 10);
    double worst = 0.0;
    for (int i = 0; i < prob.mass.n; ++i)
        for (int j = 0; j < prob.mass.n; ++j)
            worst = std::max(worst, std::abs(prob.mass.at(i, j) - (i == j ? 1.0 : 0.0)));
    CHECK(worst < 1e-12);
    CHECK(prob.area == Catch::Approx(1.0).margin(1e-13));
}

TEST_CASE("single-harmonic weight couples neighbouring modes") {
    const TorusParams p{0.0, 1.0};
    const WeightFn w{parse_weight_expression("1 + 0.3*cos(2*pi*x)", p)};
    const GalerkinProblem prob = assemble(p, w, 4.0 * kPi * kPi * 6.0);
    int idx10 = -1, idx20 = -1, idx10s = -1, idx20s = -1;
    for (int i = 0; i < static_cast<int>(prob.basis.size()); ++i) {
        const BasisFn& bf = prob.basis[i];
        if (bf.mode.q == 1 && bf.mode.p == 0 && bf.parity == Parity::Cos) idx10 = i;
        if (bf.mode.q == 2 && bf.mode.p == 0 && bf.parity == Parity::Cos) idx20 = i;
        if (bf.mode.q == 1 && bf.mode.p == 0 && bf.parity == Parity::Sin) idx10s = i;
        if (bf.mode.q == 2 && bf.mode.p == 0 && bf.parity == Parity::Sin) idx20s = i;
    }
    REQUIRE(idx10 >= 0);
    REQUIRE(idx20 >= 0);
    CHECK(prob.mass.at(idx10, idx20) == Catch::Approx(0.15).margin(1e-12));
    CHECK(prob.mass.at(idx10s, idx20s) == Catch::Approx(0.15).margin(1e-12));
    CHECK(prob.mass.max_asymmetry() == 0.0);
    // diagonal stays unit: the (2q, 0) aliasing term vanishes for this weight
    CHECK(prob.mass.at(idx10, idx10) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("unit weight reproduces the lattice spectrum exactly") {
    for (const TorusParams& p : {TorusParams{0.0, 1.0}, TorusParams{0.3, 1.2}}) {
        const GalerkinProblem prob = assemble(p, kUnit, 4.0 * kPi * kPi * 8.0);
        const std::vector<double> ritz = solve_generalized(prob, 10);
        const SpectrumList spec = enumerate_spectrum(p, 10);
        for (int k = 0; k <= 10; ++k)
            CHECK(ritz[k] == Catch::Approx(spec.eigenvalue_at(k)).margin(1e-10));
    }
}

TEST_CASE("Ritz values decrease weakly under basis enlargement") {
    const TorusParams p{0.0, 1.0};
    const WeightFn w{parse_weight_expression("1 + 0.3*cos(2*pi*x)", p)};
    const std::vector<double> small = solve_generalized(assemble(p, w, 4.0 * kPi * kPi * 5.0), 5);
    const std::vector<double> big = solve_generalized(assemble(p, w, 4.0 * kPi * kPi * 10.0), 5);
    for (int k = 0; k <= 5; ++k) CHECK(big[k] <= small[k] + 1e-10);
}

TEST_CASE("normalized values are scale invariant and constant-weight consistent") {
    const TorusParams p{0.0, 1.0};
    const double cut = 4.0 * kPi * kPi * 6.0;
    const WeightFn w{parse_weight_expression("1 + 0.3*cos(2*pi*x)", p)};
    const WeightFn w5{[&](double x, double y) { return 5.0 * w.eval(x, y); }};
    CHECK(normalized_lambda(p, w, cut, 2) ==
          Catch::Approx(normalized_lambda(p, w5, cut, 2)).epsilon(1e-10));

    const WeightFn c7{[](double, double) { return 7.0; }};
    CHECK(normalized_lambda(p, c7, cut, 2) ==
          Catch::Approx(normalized_lambda(p, kUnit, cut, 2)).epsilon(1e-10));
}

TEST_CASE("assembly guards") {
    CHECK_THROWS_AS(assemble({0.0, 1.0}, kUnit, 4.0 * kPi * kPi * 0.5), std::invalid_argument);
    const WeightFn negative{[](double x, double) { return std::cos(kTwoPi * x); }};
    CHECK_THROWS_AS(assemble({0.0, 1.0}, negative, 4.0 * kPi * kPi * 6.0),
                    std::invalid_argument);
    // aliasing floor: forcing a tiny grid must be rejected
    CHECK_THROWS_AS(assemble({0.0, 1.0}, kUnit, 4.0 * kPi * kPi * 36.0, 16),
                    std::invalid_argument);
    // non-periodic weight on a sheared torus
    const WeightFn skew{[](double x, double) { return 2.0 + std::sin(kTwoPi * x); }};
    CHECK_THROWS_AS(assemble({0.3, 1.2}, skew, 4.0 * kPi * kPi * 6.0), std::invalid_argument);
}

TEST_CASE("generalized eigensolver on a hand case") {
    std::vector<double> kdiag = {2.0, 5.0};
    SymMatrix m(2);
    m.set_sym(0, 0, 1.0);
    m.set_sym(1, 1, 2.0);
    m.set_sym(0, 1, 0.3);
    const EigenResult res = generalized_eigen_diag(kdiag, m, true);
    // det(K - lambda M): 1.91 lambda^2 - 9 lambda + 10 = 0
    const double disc = std::sqrt(81.0 - 4.0 * 1.91 * 10.0);
    CHECK(res.values[0] == Catch::Approx((9.0 - disc) / 3.82).margin(1e-14));
    CHECK(res.values[1] == Catch::Approx((9.0 + disc) / 3.82).margin(1e-14));

    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            double s = 0.0;
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) s += res.vectors[i][r] * m.at(r, c) * res.vectors[j][c];
            CHECK(s == Catch::Approx(i == j ? 1.0 : 0.0).margin(1e-12));
        }

    SymMatrix bad(2);
    bad.set_sym(0, 0, 1.0);
    bad.set_sym(1, 1, -1.0);
    CHECK_THROWS_AS(generalized_eigen_diag(kdiag, bad, false), numeric_error);
}

TEST_CASE("certificate on a conformal metric") {
    const TorusParams p{0.0, 1.2};
    const WeightFn w{parse_weight_expression("exp(0.5*sin(2*pi*x)*sin(2*pi*y/b))", p)};
    const BoundCertificate cert = bound_certificate(p, w, 4.0 * kPi * kPi * 10.0);
    CHECK(cert.certified);
    CHECK(cert.lambda2_bar < cert.upper_bound);
    CHECK(cert.lambda1_within_topological_bound);
    CHECK(cert.lambda2_below_uniform_bound);
    CHECK(cert.lambda1_bar > 0.0);
}
