#include "knotspread/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace knotspread {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

ClosestPoints segment_distance(const Segment& p, const Segment& q) {
    const Vec3 d1 = p.delta();
    const Vec3 d2 = q.delta();
    const Vec3 r = p.a - q.a;
    const double a = dot(d1, d1);
    const double e = dot(d2, d2);
    const double f = dot(d2, r);

    double s = 0.0;
    double t = 0.0;
    if (a == 0.0 && e == 0.0) {
        // both degenerate
    } else if (a == 0.0) {
        t = clamp01(f / e);
    } else {
        const double c = dot(d1, r);
        if (e == 0.0) {
            s = clamp01(-c / a);
        } else {
            const double b = dot(d1, d2);
            const double denom = a * e - b * b;
            // Near-parallel segments fall back to s = 0; the t/s clamping below still
            // produces the true minimum distance.
            s = denom > 1e-14 * a * e ? clamp01((b * f - c * e) / denom) : 0.0;
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = clamp01(-c / a);
            } else if (t > 1.0) {
                t = 1.0;
                s = clamp01((b - c) / a);
            }
        }
    }
    return {distance(p.at(s), q.at(t)), s, t};
}

ClosestPoints point_segment_distance(const Vec3& x, const Segment& q) {
    const Vec3 d = q.delta();
    const double dd = dot(d, d);
    const double t = dd > 0.0 ? clamp01(dot(x - q.a, d) / dd) : 0.0;
    return {distance(x, q.at(t)), 0.0, t};
}

bool segment_intersects_triangle(const Segment& seg, const Vec3& a, const Vec3& b, const Vec3& c) {
    const Vec3 n = cross(b - a, c - a);
    const double nn = norm(n);
    const double scale = std::max({norm(b - a), norm(c - a), seg.length()});
    if (nn <= 1e-14 * scale * scale) {
        // Degenerate triangle: treat as its longest edges.
        const double tol = 1e-12 * scale;
        return segment_distance(seg, {a, b}).distance <= tol ||
               segment_distance(seg, {b, c}).distance <= tol ||
               segment_distance(seg, {a, c}).distance <= tol;
    }
    const Vec3 unit_n = n / nn;
    const double da = dot(seg.a - a, unit_n);
    const double db = dot(seg.b - a, unit_n);
    const double plane_tol = 1e-12 * scale;

    auto inside = [&](const Vec3& x) {
        // Barycentric sign test against each edge, inclusive with a small slack.
        const double slack = -1e-12 * nn;
        return dot(cross(b - a, x - a), unit_n) >= slack &&
               dot(cross(c - b, x - b), unit_n) >= slack &&
               dot(cross(a - c, x - c), unit_n) >= slack;
    };

    if (std::abs(da) <= plane_tol && std::abs(db) <= plane_tol) {
        if (inside(seg.a) || inside(seg.b)) return true;
        return segment_distance(seg, {a, b}).distance <= plane_tol ||
               segment_distance(seg, {b, c}).distance <= plane_tol ||
               segment_distance(seg, {c, a}).distance <= plane_tol;
    }
    if ((da > plane_tol && db > plane_tol) || (da < -plane_tol && db < -plane_tol)) return false;
    const double denom = da - db;
    const double t = denom != 0.0 ? std::clamp(da / denom, 0.0, 1.0) : 0.0;
    return inside(seg.at(t));
}

double angle_between(const Vec3& u, const Vec3& v) {
    return std::atan2(norm(cross(u, v)), dot(u, v));
}

}  // namespace knotspread
