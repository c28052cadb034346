#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "knotspread/constructions.hpp"
#include "knotspread/curve.hpp"
#include "knotspread/curve_io.hpp"
#include "knotspread/error.hpp"
#include "knotspread/exponent.hpp"
#include "oracles.hpp"

using namespace knotspread;

namespace {

PolygonalCurve square() { return PolygonalCurve({{1, 1, 0}, {-1, 1, 0}, {-1, -1, 0}, {1, -1, 0}}); }

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(Curve, SquareLengthAndDiameter) {
    EXPECT_DOUBLE_EQ(length(square()), 8.0);
    EXPECT_DOUBLE_EQ(diameter(square()), 2.0 * std::sqrt(2.0));
}

TEST(Curve, NgonLengthIsInscribedChordSum) {
    for (int n : {3, 7, 64, 1024}) {
        const double r = 1.7;
        EXPECT_NEAR(length(regular_ngon(n, r)), 2.0 * n * r * std::sin(std::numbers::pi / n), 1e-12);
    }
}

TEST(Curve, RejectsShortAndDegenerateInput) {
    EXPECT_EQ(kind_of([] { PolygonalCurve({{0, 0, 0}, {1, 0, 0}}); }), ErrorKind::InvalidArgument);
    EXPECT_EQ(kind_of([] { PolygonalCurve({{0, 0, 0}, {1, 0, 0}, {1, 0, 0}, {0, 1, 0}}); }),
              ErrorKind::InvalidArgument);
    EXPECT_ANY_THROW(PolygonalCurve({{0, 0, NAN}, {1, 0, 0}, {0, 1, 0}}));
}

TEST(Curve, CyclicAccess) {
    const PolygonalCurve c = square();
    EXPECT_EQ(c.wrap(-1), 3u);
    EXPECT_EQ(c.wrap(9), 1u);
    EXPECT_EQ(c.vertex(-1).x, c.vertex(3).x);
    EXPECT_TRUE(edges_adjacent(4, 0, 3));
    EXPECT_TRUE(edges_adjacent(4, 1, 1));
    EXPECT_FALSE(edges_adjacent(4, 0, 2));
}

TEST(Curve, Embeddedness) {
    EXPECT_TRUE(validate_embedded(square()).is_embedded);
    EXPECT_NEAR(validate_embedded(square()).min_nonadjacent_gap, 2.0, 1e-15);
    const PolygonalCurve bowtie({{1, 1, 0}, {-1, -1, 0}, {-1, 1, 0}, {1, -1, 0}});
    const EmbeddingReport r = validate_embedded(bowtie);
    EXPECT_FALSE(r.is_embedded);
    ASSERT_TRUE(r.offending_pair.has_value());
    EXPECT_EQ(kind_of([&] { require_embedded(bowtie); }), ErrorKind::NotEmbedded);

    const PolygonalCurve tri({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
    EXPECT_TRUE(validate_embedded(tri).is_embedded);
    EXPECT_TRUE(std::isinf(validate_embedded(tri).min_nonadjacent_gap));
}

TEST(Curve, NearTouchIsFlagged) {
    // Two strands 1e-14 apart on a curve of length about 8.
    const PolygonalCurve c({{0, 0, 0}, {2, 0, 0}, {2, 1e-14, 1}, {1, 1e-14, 1}, {1, 1e-14, -1}, {0, 1, 0}});
    EXPECT_FALSE(validate_embedded(c).is_embedded);
}

TEST(Curve, SimilarityScalesLengthAndKeepsShape) {
    const PolygonalCurve c = oracle::trefoil_sticks();
    const Similarity s{2.5, Rotation::about_axis({1, 2, 3}, 0.7), {4, -1, 2}};
    const PolygonalCurve t = transform(c, s);
    EXPECT_NEAR(length(t), 2.5 * length(c), 1e-12);
    EXPECT_NEAR(diameter(t), 2.5 * diameter(c), 1e-12);
    EXPECT_NEAR(radius_of_gyration(t), 2.5 * radius_of_gyration(c), 1e-12);
    EXPECT_EQ(kind_of([&] { scaled(c, 0.0); }), ErrorKind::InvalidArgument);
    EXPECT_EQ(kind_of([&] { scaled(c, -1.0); }), ErrorKind::InvalidArgument);

    const PolygonalCurve same = transform(c, Similarity{});
    for (std::size_t i = 0; i < c.size(); ++i) {
        EXPECT_EQ(same.vertices()[i].x, c.vertices()[i].x);
        EXPECT_EQ(same.vertices()[i].z, c.vertices()[i].z);
    }
}

TEST(Curve, GyrationOfSquare) {
    // Uniform measure on the boundary of the square of side 2: E|x|^2 = 1 + 1/3 per side.
    EXPECT_NEAR(radius_of_gyration(square()), std::sqrt(4.0 / 3.0), 1e-14);
    const Vertex3 com = center_of_mass(square());
    EXPECT_NEAR(norm(com), 0.0, 1e-15);
}

TEST(Curve, SubdivideKeepsVerticesAndMergeUndoes) {
    const PolygonalCurve c = oracle::trefoil_sticks();
    const PolygonalCurve s = subdivide(c, 5);
    ASSERT_EQ(s.size(), 30u);
    for (std::size_t i = 0; i < c.size(); ++i) {
        EXPECT_EQ(s.vertices()[5 * i].x, c.vertices()[i].x);
        EXPECT_EQ(s.vertices()[5 * i].y, c.vertices()[i].y);
    }
    EXPECT_NEAR(length(s), length(c), 1e-12);
    EXPECT_EQ(merge_straight_vertices(s).size(), c.size());
}

TEST(Curve, TurningAngles) {
    EXPECT_NEAR(turning_angle(square(), 0), std::numbers::pi / 2, 1e-15);
    const PolygonalCurve hex = regular_ngon(6, 1.0);
    for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(turning_angle(hex, i), std::numbers::pi / 3, 1e-14);
}

TEST(CurveIo, ParsesCommentsAndRoundTrips) {
    std::istringstream in("# header\n1 2 3\n\n  4 5 6  \n# mid\n7 8 10\n");
    const CurveFile f = parse_curve_text(in);
    ASSERT_EQ(f.points.size(), 3u);
    ASSERT_EQ(f.comments.size(), 2u);
    EXPECT_EQ(f.comments[0], "header");
    EXPECT_EQ(f.points[2].z, 10.0);

    const PolygonalCurve c = scaled(oracle::trefoil_sticks(), 1.0 / 3.0);
    std::stringstream io;
    write_curve(io, c, {"a", "b"});
    const CurveFile back = parse_curve_text(io);
    ASSERT_EQ(back.points.size(), c.size());
    for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(back.points[i].y, c.vertices()[i].y);
    EXPECT_EQ(back.comments[1], "b");
}

TEST(CurveIo, Errors) {
    std::istringstream bad("1 2\n");
    EXPECT_EQ(kind_of([&] { parse_curve_text(bad); }), ErrorKind::Parse);
    std::istringstream junk("1 2 3 4\n");
    EXPECT_EQ(kind_of([&] { parse_curve_text(junk); }), ErrorKind::Parse);
    std::istringstream word("1 x 3\n");
    EXPECT_EQ(kind_of([&] { parse_curve_text(word); }), ErrorKind::Parse);
    EXPECT_EQ(kind_of([] { read_curve("/nonexistent/none.curve"); }), ErrorKind::Parse);
}

TEST(CurveIo, DataFiles) {
    const PolygonalCurve sq = read_curve(KNOTSPREAD_DATA_DIR "/curves/square.curve");
    EXPECT_DOUBLE_EQ(length(sq), 8.0);
    const PolygonalCurve t = read_curve(KNOTSPREAD_DATA_DIR "/curves/trefoil6.curve");
    const PolygonalCurve ref = oracle::trefoil_sticks();
    ASSERT_EQ(t.size(), ref.size());
    for (std::size_t i = 0; i < t.size(); ++i) EXPECT_EQ(t.vertices()[i].x, ref.vertices()[i].x);
}

TEST(Exponent, Parse) {
    EXPECT_TRUE(Exponent::parse("log").is_log());
    EXPECT_TRUE(Exponent::parse("inf").is_diameter());
    EXPECT_EQ(Exponent::parse("2").p(), 2.0);
    EXPECT_EQ(Exponent::parse("-0.5").p(), -0.5);
    EXPECT_EQ(kind_of([] { Exponent::parse("-1"); }), ErrorKind::InvalidArgument);
    EXPECT_TRUE(Exponent::parse("0").is_log());
    EXPECT_EQ(kind_of([] { Exponent::finite(0.0); }), ErrorKind::InvalidArgument);
    EXPECT_EQ(kind_of([] { Exponent::parse("abc"); }), ErrorKind::InvalidArgument);
    EXPECT_EQ(kind_of([] { Exponent::finite(INFINITY); }), ErrorKind::InvalidArgument);
    EXPECT_EQ(Exponent::log(), Exponent::parse("log"));
    EXPECT_FALSE(Exponent::finite(1.0) == Exponent::finite(2.0));
}
