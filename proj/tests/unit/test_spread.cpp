#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "knotspread/constructions.hpp"
#include "knotspread/error.hpp"
#include "knotspread/reference.hpp"
#include "knotspread/spread.hpp"
#include "oracles.hpp"

using namespace knotspread;

namespace {

constexpr double pi = std::numbers::pi;

const std::vector<Exponent>& oracle_exponents() {
    static const std::vector<Exponent> e{Exponent::finite(-0.5), Exponent::log(), Exponent::finite(1.0)};
    return e;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(ChordIntegral, SameSegmentMatchesOracle) {
    for (const Exponent& e : oracle_exponents()) {
        for (double l : {0.3, 1.0, 2.7}) {
            const double oracle = oracle::same_segment_oracle(l, e);
            EXPECT_LT(rel(chord_integral_same_segment(l, e), oracle), 1e-6) << e.to_string() << " l=" << l;
            const Segment s{{0, 0, 0}, {l, 0, 0}};
            EXPECT_LT(rel(chord_integral_pair(s, s, e).value, oracle), 1e-6);
        }
    }
}

TEST(ChordIntegral, PerpendicularCornerMatchesOracle) {
    for (const Exponent& e : oracle_exponents()) {
        for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{0.4, 1.3}}) {
            const Segment in{{a, 0, 0}, {0, 0, 0}};
            const Segment out{{0, 0, 0}, {0, b, 0}};
            const double oracle = oracle::perpendicular_corner_oracle(a, b, e);
            const PairIntegral v = chord_integral_pair(in, out, e);
            EXPECT_TRUE(v.converged);
            EXPECT_LT(rel(v.value, oracle), 1e-6) << e.to_string() << " a=" << a << " b=" << b;
            EXPECT_LT(rel(chord_integral_pair(out, in, e).value, oracle), 1e-6);
        }
    }
}

TEST(ChordIntegral, DisjointParallelMatchesOracle) {
    for (const Exponent& e : oracle_exponents()) {
        for (double h : {0.1, 0.5, 2.0}) {
            const Segment a{{0, 0, 0}, {1, 0, 0}};
            const Segment b{{0, h, 0}, {1, h, 0}};
            const double oracle = oracle::parallel_pair_oracle(h, e);
            EXPECT_LT(rel(chord_integral_pair(a, b, e).value, oracle), 1e-6) << e.to_string() << " h=" << h;
        }
    }
}

TEST(ChordIntegral, PolynomialKernelExact) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    for (int i = 0; i < 20; ++i) {
        const Segment a{{g(rng), g(rng), g(rng)}, {g(rng), g(rng), g(rng)}};
        const Segment b{{g(rng), g(rng), g(rng)}, {g(rng), g(rng), g(rng)}};
        const double exact = chord_integral_pair_p2(a, b);
        // Midpoint rule with Richardson is exact up to rounding for a quadratic integrand.
        const double la = a.length(), lb = b.length();
        const double oracle =
            la * lb * oracle::graded_riemann_2d([&](double s, double t) { return norm2(a.at(s) - b.at(t)); }, 1, 8);
        EXPECT_LT(rel(exact, oracle), 1e-12);
        EXPECT_LT(rel(chord_integral_pair(a, b, Exponent::finite(2.0)).value, exact), 1e-8);
    }
}

TEST(Spread, RegularPolygonApproachesCircle) {
    const PolygonalCurve c = regular_ngon(1024, 1.0);
    EXPECT_LT(rel(spread(c, Exponent::finite(2.0)).value, std::sqrt(2.0)), 1e-5);
    EXPECT_LT(rel(spread(c, Exponent::log()).value, 1.0), 1e-4);
    EXPECT_EQ(spread(c, Exponent::diameter()).value, diameter(c));
    EXPECT_EQ(spread(c, Exponent::diameter()).method, SpreadMethod::Diameter);
    EXPECT_EQ(spread(c, Exponent::finite(2.0)).method, SpreadMethod::ExactP2);
}

TEST(Spread, SquareDiameterRatio) {
    const PolygonalCurve sq({{1, 1, 0}, {-1, 1, 0}, {-1, -1, 0}, {1, -1, 0}});
    EXPECT_NEAR(density_ratio(sq, Exponent::diameter()), 2.0 * std::sqrt(2.0), 1e-14);
}

TEST(Spread, GyrationIdentity) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const PolygonalCurve c = oracle::random_curve(rng, 12, 12);
        const double d2 = spread(c, Exponent::finite(2.0)).value;
        EXPECT_LE(std::abs(d2 - std::sqrt(2.0) * radius_of_gyration(c)) / d2, 1e-10);
    }
}

TEST(Spread, QuadratureAgreesWithExactAtTwo) {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 5; ++i) {
        const PolygonalCurve c = oracle::random_curve(rng, 8, 20);
        const SpreadValue exact = spread(c, Exponent::finite(2.0));
        const SpreadValue quad = spread(c, Exponent::finite(2.0), {}, true);
        EXPECT_EQ(quad.method, SpreadMethod::Quadrature);
        EXPECT_LT(rel(quad.value, exact.value), 1e-8);
    }
}

TEST(Spread, PropertiesOnRandomCurves) {
    std::mt19937_64 rng(13);
    const std::vector<Exponent> exps{Exponent::finite(-0.5), Exponent::log(), Exponent::finite(0.5),
                                     Exponent::finite(1.0), Exponent::finite(2.0), Exponent::finite(4.0),
                                     Exponent::diameter()};
    for (int i = 0; i < 8; ++i) {
        const PolygonalCurve c = oracle::random_curve(rng, 8, 24);
        const double L = length(c);
        for (const Exponent& e : exps) {
            const SpreadValue v = spread(c, e);
            EXPECT_GT(v.value, 0.0);
            EXPECT_LE(v.value, diameter(c) + 1e-9);
            EXPECT_GE(L / v.value, 2.0 - 1e-12);
            // Similarity invariance of the ratio and linear scaling of D_p.
            const Similarity s{3.0, Rotation::about_axis({1, -1, 2}, 1.1), {5, 6, 7}};
            EXPECT_LT(rel(spread(transform(c, s), e).value, 3.0 * v.value), 1e-9);
            // Subdivision leaves the image unchanged.
            const SpreadValue sub = spread(subdivide(c, 2), e);
            EXPECT_LT(rel(sub.value, v.value), std::max(1e-6, 10.0 * (sub.err_estimate + v.err_estimate) / v.value));
            if (!e.is_diameter() && (!e.is_finite() || e.p() <= 2.0)) {
                EXPECT_LE(v.value, circle_spread(L, e) * (1 + 1e-4));
            }
        }
    }
}

TEST(Spread, MonotoneInExponent) {
    // Power means increase with p.
    std::mt19937_64 rng(14);
    const PolygonalCurve c = oracle::random_curve(rng, 10, 10);
    double prev = 0.0;
    for (const Exponent& e : {Exponent::finite(-0.5), Exponent::log(), Exponent::finite(0.5), Exponent::finite(1.0),
                              Exponent::finite(2.0), Exponent::finite(3.0), Exponent::diameter()}) {
        const double v = spread(c, e).value;
        EXPECT_GT(v, prev) << e.to_string();
        prev = v;
    }
}

TEST(Spread, PLimit) {
    const PLimitCheck lim = spread_p_limit_check(regular_ngon(256, 1.0));
    EXPECT_LT(rel(lim.d_plus, lim.d_zero), 1e-2);
    EXPECT_LT(rel(lim.d_minus, lim.d_zero), 1e-2);
    EXPECT_LT(lim.d_minus, lim.d_zero);
    EXPECT_GT(lim.d_plus, lim.d_zero);
}

TEST(Spread, Errors) {
    const PolygonalCurve bowtie({{1, 1, 0}, {-1, -1, 0}, {-1, 1, 0}, {1, -1, 0}});
    EXPECT_THROW(
        {
            try {
                spread(bowtie, Exponent::finite(1.0));
            } catch (const Error& e) {
                EXPECT_EQ(e.kind(), ErrorKind::NotEmbedded);
                throw;
            }
        },
        Error);
    // A vertex angle below 1e-6 radians is refused.
    const PolygonalCurve spike({{0, 0, 0}, {1, 0, 0}, {0, 1e-8, 0}, {-1, 0.5, 0}});
    EXPECT_THROW(spread(spike, Exponent::finite(-0.5)), Error);
    QuadratureConfig bad;
    bad.base_nodes = 1;
    EXPECT_THROW(spread(regular_ngon(8, 1.0), Exponent::finite(1.0), bad), Error);
}

TEST(Spread, ThreadedSweepMatches) {
    const PolygonalCurve c = regular_ngon(64, 1.0);
    QuadratureConfig q;
    const double serial = spread(c, Exponent::finite(1.0), q).value;
    q.threads = 4;
    EXPECT_EQ(spread(c, Exponent::finite(1.0), q).value, serial);
    q.deterministic = false;
    EXPECT_LT(rel(spread(c, Exponent::finite(1.0), q).value, serial), 1e-12);
}

TEST(SpreadEvaluator, IncrementalMatchesFresh) {
    std::mt19937_64 rng(15);
    std::normal_distribution<double> g(0.0, 0.02);
    for (const Exponent& e : {Exponent::finite(-0.5), Exponent::log(), Exponent::finite(3.0)}) {
        PolygonalCurve c = regular_ngon(24, 1.0);
        SpreadEvaluator ev(c, e);
        EXPECT_LT(rel(ev.value().value, spread(c, e).value), 1e-12);
        for (int step = 0; step < 10; ++step) {
            const std::size_t k = static_cast<std::size_t>(step * 7) % c.size();
            std::vector<Vertex3> v(c.vertices().begin(), c.vertices().end());
            v[k] = v[k] + Vec3{g(rng), g(rng), g(rng)};
            const PolygonalCurve moved(v);
            const double proposed = ev.propose(k, moved).value;
            if (step % 2 == 0) {
                ev.commit();
                c = moved;
            }
            EXPECT_LT(rel(ev.value().value, spread(c, e).value), 1e-12);
            EXPECT_LT(rel(proposed, spread(moved, e).value), 1e-12);
        }
        ev.rescale(2.5);
        EXPECT_LT(rel(ev.value().value, spread(scaled(c, 2.5), e).value), 1e-11);
    }
}
