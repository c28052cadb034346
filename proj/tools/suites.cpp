#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "knotspread/constructions.hpp"
#include "knotspread/error.hpp"
#include "knotspread/knot_guard.hpp"
#include "knotspread/reference.hpp"
#include "knotspread/spread.hpp"
#include "knotspread/thickness.hpp"

namespace knotspread::cli {

namespace {

constexpr double pi = std::numbers::pi;

// One-sided: the bound is reported as the target with zero tolerance.
Check at_most(std::string name, double observed, double bound) {
    return {std::move(name), observed <= bound, observed, bound, 0.0};
}

Check relative(std::string name, double observed, double target, double tol) {
    const double err = std::abs(observed - target) / std::abs(target);
    return {std::move(name), err <= tol, observed, target, tol};
}

std::string label(const Exponent& e) {
    if (e.is_log()) return "log";
    if (e.is_diameter()) return "inf";
    std::string s = e.to_string();
    std::replace(s.begin(), s.end(), '-', 'm');
    return s;
}

// Six-stick trefoil.
PolygonalCurve trefoil_sticks() {
    return PolygonalCurve({{0.867, 0.02, 0.723},
                           {-0.88, 0.538, -0.452},
                           {-0.319, -1.132, 0.297},
                           {0.955, 0.802, -0.204},
                           {-0.913, 0.504, 0.819},
                           {0.465, -0.754, -0.832}});
}

PolygonalCurve random_curve(std::mt19937_64& rng, int lo, int hi) {
    std::uniform_int_distribution<int> size(lo, hi);
    for (;;) {
        const int n = size(rng);
        PolygonalCurve c = random_embedded_polygon(n, rng);
        if (validate_embedded(c).is_embedded) return c;
    }
}

Rotation random_rotation(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    const Vec3 axis{g(rng), g(rng), g(rng)};
    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    return Rotation::about_axis(axis, angle(rng));
}

}  // namespace

std::vector<Check> constants_suite(double scale) {
    std::vector<Check> out;
    out.push_back(relative("closed_form.c_log", degenerate_constant(Exponent::log()), 2.0 * pi, 1e-14 * scale));
    out.push_back(relative("closed_form.c_1", degenerate_constant(Exponent::finite(1.0)), pi * pi / 2.0,
                           1e-12 * scale));
    out.push_back(relative("closed_form.c_2", degenerate_constant(Exponent::finite(2.0)), std::sqrt(2.0) * pi,
                           1e-12 * scale));
    out.push_back(relative("closed_form.c_inf", degenerate_constant(Exponent::diameter()), 2.0, 1e-14 * scale));

    for (double p : {-0.5, 0.5, 1.0, 2.0, 3.0, 7.5}) {
        out.push_back(relative("sin_integral." + label(Exponent::finite(p)), sin_power_integral(p),
                               sin_power_integral_beta(p), 1e-10 * scale));
    }

    const double L = 2.0 * pi;
    out.push_back(relative("circle.p2", circle_spread(L, Exponent::finite(2.0)), std::sqrt(2.0), 1e-12 * scale));
    out.push_back(relative("circle.log", circle_spread(L, Exponent::log()), 1.0, 1e-12 * scale));
    out.push_back(relative("circle.inf", circle_spread(L, Exponent::diameter()), 2.0, 1e-12 * scale));

    const PolygonalCurve ngon = regular_ngon(1024, 1.0);
    for (const Exponent& e : {Exponent::finite(-0.5), Exponent::log(), Exponent::finite(0.5), Exponent::finite(1.0),
                              Exponent::finite(1.5), Exponent::finite(2.0)}) {
        out.push_back(relative("ngon1024.ratio." + label(e), density_ratio(ngon, e), degenerate_constant(e),
                               1e-4 * scale));
    }
    return out;
}

std::vector<Check> properties_suite(std::uint64_t seed, double scale) {
    std::mt19937_64 rng(seed);
    std::vector<Check> out;

    double gyration = 0.0;
    for (int i = 0; i < 20; ++i) {
        const PolygonalCurve c = random_curve(rng, 12, 12);
        const double d2 = spread(c, Exponent::finite(2.0)).value;
        gyration = std::max(gyration, std::abs(d2 - std::sqrt(2.0) * radius_of_gyration(c)) / d2);
    }
    out.push_back(at_most("gyration_identity", gyration, 1e-10 * scale));

    const std::vector<Exponent> exps{Exponent::finite(-0.5), Exponent::log(), Exponent::finite(1.0),
                                     Exponent::finite(2.0)};
    std::vector<PolygonalCurve> curves;
    for (int i = 0; i < 12; ++i) curves.push_back(random_curve(rng, 8, 32));

    for (const Exponent& e : exps) {
        double mean_chord = 0.0;
        double diam_excess = -std::numeric_limits<double>::infinity();
        double scaling = 0.0;
        double subdivision = 0.0;
        double subdivision_tol = 1e-6;
        for (const PolygonalCurve& c : curves) {
            const SpreadValue v = spread(c, e);
            mean_chord = std::max(mean_chord, v.value / circle_spread(length(c), e));
            diam_excess = std::max(diam_excess, v.value - diameter(c));
            scaling = std::max(scaling, std::abs(spread(scaled(c, 2.5), e).value / (2.5 * v.value) - 1.0));
            const SpreadValue s = spread(subdivide(c, 3), e);
            subdivision = std::max(subdivision, std::abs(s.value - v.value) / v.value);
            subdivision_tol = std::max(subdivision_tol, 10.0 * (s.err_estimate + v.err_estimate) / v.value);
        }
        out.push_back(at_most("mean_chord." + label(e), mean_chord, 1.0 + 1e-4 * scale));
        out.push_back(at_most("diameter_bound." + label(e), diam_excess, 1e-9 * scale));
        out.push_back(at_most("scale_invariance." + label(e), scaling, 1e-9 * scale));
        out.push_back(at_most("subdivision_invariance." + label(e), subdivision, subdivision_tol * scale));
    }

    double pzero = 0.0;
    for (int i = 0; i < 4; ++i) {
        const PLimitCheck lim = spread_p_limit_check(random_curve(rng, 16, 16));
        pzero = std::max({pzero, std::abs(lim.d_plus - lim.d_zero) / lim.d_zero,
                          std::abs(lim.d_minus - lim.d_zero) / lim.d_zero});
    }
    out.push_back(at_most("p_zero_continuity", pzero, 1e-2 * scale));

    double thick = 0.0;
    for (int i = 0; i < 10; ++i) {
        const PolygonalCurve c = random_curve(rng, 8, 24);
        thick = std::max(thick, std::abs(thickness(subdivide(c, 4)).thickness - thickness(c).thickness));
    }
    out.push_back(at_most("thickness_subdivision", thick, 1e-10 * scale));

    const PolygonalCurve knot = trefoil_sticks();
    const double det0 = static_cast<double>(knot_determinant(knot).determinant);
    double det_spread = 0.0;
    for (int i = 0; i < 4; ++i) {
        const Similarity sim{1.0 + i, random_rotation(rng), {0.1 * i, -0.2, 0.3}};
        const PolygonalCurve moved = subdivide(transform(knot, sim), 1 + i);
        det_spread = std::max(det_spread,
                              std::abs(static_cast<double>(knot_determinant(moved, seed + i).determinant) - det0));
    }
    out.push_back(relative("determinant.trefoil", det0, 3.0, 0.0));
    out.push_back(at_most("determinant.stability", det_spread, 0.0));
    return out;
}

}  // namespace knotspread::cli
