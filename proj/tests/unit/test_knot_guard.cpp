#include <random>

#include <gtest/gtest.h>

#include "knotspread/constructions.hpp"
#include "knotspread/error.hpp"
#include "knotspread/knot_guard.hpp"
#include "oracles.hpp"

using namespace knotspread;

TEST(KnotGuard, UnknotsAreOne) {
    EXPECT_EQ(knot_determinant(regular_ngon(32, 1.0)).determinant, 1u);
    EXPECT_EQ(knot_determinant(regular_ngon(32, 1.0)).crossings_used, 0u);
    std::mt19937_64 rng(31);
    for (int i = 0; i < 10; ++i) EXPECT_EQ(knot_determinant(oracle::random_curve(rng, 8, 30)).determinant, 1u);
}

TEST(KnotGuard, StickTrefoil) {
    const KnotGuardReport r = knot_determinant(oracle::trefoil_sticks());
    EXPECT_EQ(r.determinant, 3u);
    EXPECT_GE(r.crossings_used, 3u);
}

TEST(KnotGuard, Patterns) {
    EXPECT_EQ(knot_determinant(builtin_pattern("trefoil").closed_by_axis()).determinant, 3u);
    EXPECT_EQ(knot_determinant(builtin_pattern("figure_eight").closed_by_axis()).determinant, 5u);
    EXPECT_EQ(knot_determinant(straight_pattern().closed_by_axis()).determinant, 1u);
}

TEST(KnotGuard, AgreesWithColouringOracle) {
    std::mt19937_64 rng(32);
    std::normal_distribution<double> g;
    const std::vector<std::pair<PolygonalCurve, std::uint64_t>> knots{
        {oracle::trefoil_sticks(), 3},
        {builtin_pattern("trefoil").closed_by_axis(), 3},
        {builtin_pattern("figure_eight").closed_by_axis(), 5},
        {regular_ngon(12, 1.0), 1},
    };
    for (const auto& [curve, det] : knots) {
        int compared = 0;
        for (int i = 0; i < 12; ++i) {
            const Vec3 axis{g(rng), g(rng), g(rng)};
            Diagram d;
            try {
                d = project_diagram(curve, axis);
            } catch (const Error&) {
                continue;
            }
            EXPECT_EQ(oracle::fox_determinant(d), det);
            EXPECT_EQ(knot_determinant_along(curve, axis).determinant, det);
            ++compared;
        }
        EXPECT_GE(compared, 6);
    }
}

TEST(KnotGuard, StableUnderSubdivisionAndMotion) {
    std::mt19937_64 rng(33);
    std::normal_distribution<double> g;
    const PolygonalCurve k = builtin_pattern("figure_eight").closed_by_axis();
    for (int i = 0; i < 5; ++i) {
        const Similarity s{0.5 + i, Rotation::about_axis({g(rng), g(rng), g(rng)}, g(rng)), {g(rng), g(rng), 0}};
        const PolygonalCurve moved = subdivide(transform(k, s), 1 + i % 3);
        EXPECT_EQ(knot_determinant(moved, 100 + i).determinant, 5u);
    }
}

TEST(KnotGuard, MirrorImageSameDeterminant) {
    const PolygonalCurve k = oracle::trefoil_sticks();
    std::vector<Vertex3> v(k.vertices().begin(), k.vertices().end());
    for (auto& p : v) p.z = -p.z;
    EXPECT_EQ(knot_determinant(PolygonalCurve(v)).determinant, 3u);
}

TEST(KnotGuard, NonGenericProjectionRejected) {
    // A planar curve seen edge-on overlaps itself.
    EXPECT_THROW(project_diagram(regular_ngon(8, 1.0), {1, 0, 0}), Error);
    EXPECT_EQ(project_diagram(regular_ngon(8, 1.0), {0, 0, 1}).crossings.size(), 0u);
}

TEST(KnotGuard, CrossingRecordsAreConsistent) {
    const Diagram d = project_diagram(oracle::trefoil_sticks(), {0.1, 0.2, 1.0});
    for (const Crossing& c : d.crossings) {
        EXPECT_NE(c.over_edge, c.under_edge);
        EXPECT_GT(c.over_t, 0.0);
        EXPECT_LT(c.over_t, 1.0);
        EXPECT_TRUE(c.turn == 1 || c.turn == -1);
    }
}
