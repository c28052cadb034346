#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "knotspread/curve.hpp"
#include "knotspread/exponent.hpp"
#include "knotspread/knot_guard.hpp"

namespace knotspread::oracle {

/// Kernel |d|^p, or log d at p = 0 (Log regime).
double kernel(double d, const Exponent& e);

/// Midpoint rule on [0,1]^2 after the grading map u -> u^m in both variables,
/// evaluated at N and 2N cells and combined by Richardson extrapolation.
/// `f` receives the graded coordinates and must already include nothing but the integrand.
double graded_riemann_2d(const std::function<double(double, double)>& f, int m, int cells);

/// Same in one variable.
double graded_riemann_1d(const std::function<double(double)>& f, int m, int cells);

/// Integral over an edge of length l against itself, computed in (s, v = |s - t|) coordinates:
/// 2 * int_0^l (l - v) k(v) dv.
double same_segment_oracle(double l, const Exponent& e);

/// Legs of lengths a and b meeting at a right angle: int_0^a int_0^b k(sqrt(s^2 + t^2)).
double perpendicular_corner_oracle(double a, double b, const Exponent& e);

/// Two parallel unit-length segments at distance h, aligned: plain midpoint rule (smooth integrand).
double parallel_pair_oracle(double h, const Exponent& e);

/// Knot determinant from Fox 3-colouring style arc/crossing relations of a diagram:
/// |det| of any (c-1) minor of the c x c matrix with rows 2*over - under_in - under_out.
std::uint64_t fox_determinant(const Diagram& diagram);

/// Random unknotted embedded polygon with between lo and hi vertices.
PolygonalCurve random_curve(std::mt19937_64& rng, int lo, int hi);

/// The six-stick trefoil also stored in data/curves/trefoil6.curve.
PolygonalCurve trefoil_sticks();

}  // namespace knotspread::oracle
