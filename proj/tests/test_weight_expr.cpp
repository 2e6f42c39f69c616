#include <catch_amalgamated.hpp>

#include <cmath>

#include "torusbound/weight_expr.hpp"

using namespace torusbound;

TEST_CASE("numbers, precedence, unary minus") {
    const TorusParams p{0.0, 1.0};
    CHECK(parse_weight_expression("2", p)(0, 0) == 2.0);
    CHECK(parse_weight_expression("1 + 2*3", p)(0, 0) == 7.0);
    CHECK(parse_weight_expression("(1 + 2)*3", p)(0, 0) == 9.0);
    CHECK(parse_weight_expression("-2 + 5", p)(0, 0) == 3.0);
    CHECK(parse_weight_expression("6/3/2", p)(0, 0) == 1.0);
    CHECK(parse_weight_expression("1.5e2", p)(0, 0) == 150.0);
}

TEST_CASE("variables and functions") {
    const TorusParams p{0.3, 1.2};
    const auto f = parse_weight_expression("1 + 0.3*cos(2*pi*u)", p);
    // u = x - a y / b is the first lattice coordinate
    CHECK(f(0.0, 0.0) == Catch::Approx(1.3));
    CHECK(f(0.25 + 0.3 * 0.5, 0.5 * 1.2) == Catch::Approx(1.0).margin(1e-12));

    const auto g = parse_weight_expression("exp(sin(2*pi*v))", p);
    CHECK(g(0.0, 0.3) == Catch::Approx(std::exp(std::sin(kTwoPi * 0.25))));

    const auto h = parse_weight_expression("a + b + pi", p);
    CHECK(h(0.0, 0.0) == Catch::Approx(0.3 + 1.2 + kPi));

    const auto xy = parse_weight_expression("x + 2*y", p);
    CHECK(xy(0.5, 0.25) == Catch::Approx(1.0));
}

TEST_CASE("lattice periodicity of u and v phases") {
    const TorusParams p{0.3, 1.2};
    const auto f = parse_weight_expression("cos(2*pi*u) + 0.5*sin(2*pi*(u+v))", p);
    for (double x : {0.1, 0.7})
        for (double y : {0.2, 1.0}) {
            CHECK(f(x + 1.0, y) == Catch::Approx(f(x, y)).margin(1e-12));
            CHECK(f(x + p.a, y + p.b) == Catch::Approx(f(x, y)).margin(1e-12));
        }
}

TEST_CASE("parse errors") {
    const TorusParams p{0.0, 1.0};
    CHECK_THROWS_AS(parse_weight_expression("1 +", p), std::invalid_argument);
    CHECK_THROWS_AS(parse_weight_expression("cos 2", p), std::invalid_argument);
    CHECK_THROWS_AS(parse_weight_expression("foo(2)", p), std::invalid_argument);
    CHECK_THROWS_AS(parse_weight_expression("(1 + 2", p), std::invalid_argument);
    CHECK_THROWS_AS(parse_weight_expression("1 2", p), std::invalid_argument);
    CHECK_THROWS_AS(parse_weight_expression("z", p), std::invalid_argument);
}
