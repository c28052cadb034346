#pragma once

#include "knotspread/vec3.hpp"

namespace knotspread {

/// Oriented straight segment from `a` to `b`.
struct Segment {
    Vec3 a;
    Vec3 b;

    Vec3 delta() const { return b - a; }
    double length() const { return distance(a, b); }
    Vec3 at(double t) const { return a + (b - a) * t; }
    Segment reversed() const { return {b, a}; }
};

/// Closest-point pair between two segments; `s` and `t` are the parameters on the first and second.
struct ClosestPoints {
    double distance = 0.0;
    double s = 0.0;
    double t = 0.0;
};

ClosestPoints segment_distance(const Segment& p, const Segment& q);

/// Distance from a point to a segment, with the parameter of the foot (clamped to [0,1]).
ClosestPoints point_segment_distance(const Vec3& x, const Segment& q);

/// True when the closed segment intersects the closed triangle (a, b, c).
bool segment_intersects_triangle(const Segment& seg, const Vec3& a, const Vec3& b, const Vec3& c);

/// Unsigned angle between two nonzero vectors, in [0, pi].
double angle_between(const Vec3& u, const Vec3& v);

}  // namespace knotspread
