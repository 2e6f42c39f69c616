#include <catch_amalgamated.hpp>

#include <cmath>

#include "torusbound/trial.hpp"

using namespace torusbound;

TEST_CASE("context construction on the square torus") {
    const TrialContext ctx = build_context({0.0, 1.0}, 0.5, 32);

    // the embedding components are already mean-zero on a symmetric grid
    CHECK(norm(ctx.xi0) < 1e-10);

    // f1 defaults to the lowest-mode cosine with unit L^2 norm
    double mean = 0.0, sq = 0.0;
    for (double v : ctx.f1) {
        mean += v * ctx.grid.weight();
        sq += v * v * ctx.grid.weight();
    }
    CHECK(std::abs(mean) < 1e-12);
    CHECK(sq == Catch::Approx(1.0).margin(1e-12));

    // hand value of the correlation: first component sqrt(r b / 2), rest zero
    CHECK(ctx.f1_correlation[0] == Catch::Approx(std::sqrt(0.5 * 0.5)).margin(1e-10));
    CHECK(std::abs(ctx.f1_correlation[1]) < 1e-10);
    CHECK(std::abs(ctx.f1_correlation[2]) < 1e-10);
    CHECK(std::abs(ctx.f1_correlation[3]) < 1e-10);
    CHECK(ctx.needs_fold);
}

TEST_CASE("sine choice decorrelates the embedding") {
    F1Choice choice;
    choice.use_default_mode = false;
    choice.mode = {2, 0};
    const TrialContext ctx = build_context({0.0, 1.0}, 0.5, 32, choice);
    CHECK(norm(ctx.f1_correlation) < 1e-10);
    CHECK_FALSE(ctx.needs_fold);

    const CapSearchResult res = search_orthogonal_cap(ctx, 4, 1);
    CHECK(res.trivial);
    CHECK(res.converged);
}

TEST_CASE("near-full-sphere caps reproduce the raw correlation direction") {
    const TrialContext ctx = build_context({0.0, 1.0}, 0.55, 32);
    const Vec<4> target = normalized(ctx.f1_correlation);
    const Cap<4> cap(SpherePoint<4>(Vec<4>{0.0, 0.6, 0.8, 0.0}), 0.995);
    const HNormalized hn = normalized_h(ctx, cap);
    REQUIRE_FALSE(hn.degenerate);
    CHECK(norm(sub(hn.direction, target)) < 5e-3);
}

TEST_CASE("hemisphere symmetry of the correlation field") {
    const TrialContext ctx = build_context({0.0, 1.0}, 0.55, 32);
    const Vec<4> dirs[] = {normalized(Vec<4>{0.2, -0.7, 0.4, 0.5}),
                           normalized(Vec<4>{1.0, 0.3, -0.2, 0.1})};
    for (const Vec<4>& d : dirs) {
        const HResult hp = vector_h(ctx, Cap<4>(SpherePoint<4>(d), 0.0));
        const HResult hm = vector_h(ctx, Cap<4>(SpherePoint<4>(scaled(d, -1.0)), 0.0));
        CHECK(std::abs(norm(hp.h) - norm(hm.h)) < 1e-8);
        CHECK(hp.renorm_residual < 1e-10);
        CHECK(hm.renorm_residual < 1e-10);
    }
}

TEST_CASE("orthogonal cap search at reduced density") {
    const TrialContext ctx = build_context({0.0, 1.0}, 0.55, 32);
    const CapSearchResult res = search_orthogonal_cap(ctx, 6, 12345);
    CHECK(res.converged);
    CHECK(res.residual < res.threshold);
    CHECK(res.coarse_residual >= res.residual);
}

TEST_CASE("angle-mixed eigenfunction rotates the solution cap with it") {
    F1Choice choice;
    choice.use_default_mode = false;
    choice.mode = {1, 0};
    choice.parity = Parity::Cos;
    choice.angle = 0.7;
    const TrialContext ctx = build_context({0.0, 1.0}, 0.55, 32, choice);
    CHECK(ctx.needs_fold);
    const CapSearchResult res = search_orthogonal_cap(ctx, 6, 5);
    REQUIRE(res.converged);
    // the cap stays a hemisphere whose center tracks the eigenspace angle
    CHECK(std::abs(res.cap.t) < 1e-6);
    const double along = std::abs(res.cap.center.x[0] * std::cos(0.7) +
                                  res.cap.center.x[1] * std::sin(0.7));
    CHECK(along == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("fold energy split is exact for symmetric hemispheres") {
    const TrialContext ctx = build_context({0.0, 1.0}, 0.55, 32);
    for (const Vec<4>& d : {basis_vec<4>(0, 1.0), normalized(Vec<4>{0.6, 0.8, 0.0, 0.0}),
                            basis_vec<4>(2, 1.0)}) {
        const FoldEnergySplit split = fold_energy_split(ctx, Cap<4>(SpherePoint<4>(d), 0.0));
        CHECK(std::abs(split.total - split.inside - split.outside) < 1e-12 * split.total);
        CHECK(std::abs(split.total - 2.0 * split.inside) < 1e-8 * split.total);
    }

    // a tilted cap has no such symmetry; just record that the split is sane
    const FoldEnergySplit generic =
        fold_energy_split(ctx, Cap<4>(SpherePoint<4>(normalized(Vec<4>{0.3, 0.5, -0.2, 0.7})), 0.25));
    CHECK(generic.inside > 0.0);
    CHECK(generic.outside > 0.0);
}
