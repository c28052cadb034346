#include "knotspread/thickness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "knotspread/error.hpp"

namespace knotspread {

namespace {

constexpr double kStraightAngle = 1e-10;
constexpr double kCuspMargin = 1e-9;

struct Frame {
    std::vector<Vertex3> v;
    std::vector<Vec3> edge;  // v[i+1] - v[i]
    double length = 0.0;
};

Frame make_frame(const PolygonalCurve& curve) {
    Frame f;
    const std::size_t n = curve.size();
    f.v.assign(curve.vertices().begin(), curve.vertices().end());
    f.edge.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        f.edge[i] = f.v[(i + 1) % n] - f.v[i];
        f.length += norm(f.edge[i]);
    }
    return f;
}

/// Vertex i is critical for |. - y|^2 when its one-sided derivatives differ in sign.
bool vertex_critical(const Frame& f, std::size_t i, const Vec3& y, double tol) {
    const std::size_t n = f.v.size();
    const Vec3 rel = f.v[i] - y;
    const double g_in = dot(rel, f.edge[(i + n - 1) % n]) / norm(f.edge[(i + n - 1) % n]);
    const double g_out = dot(rel, f.edge[i]) / norm(f.edge[i]);
    return (g_in >= -tol && g_out <= tol) || (g_in <= tol && g_out >= -tol);
}

struct Dcsd {
    double distance = std::numeric_limits<double>::infinity();
    Vertex3 x{}, y{};
};

Dcsd doubly_critical_self_distance(const Frame& f) {
    const std::size_t n = f.v.size();
    const double zero = 1e-12 * f.length;
    const double tol = 1e-12 * f.length;
    Dcsd out;
    double& best = out.distance;
    auto consider = [&](const Vec3& x, const Vec3& y) {
        const double d = distance(x, y);
        if (d > zero && d < best) out = {d, x, y};
    };

    // vertex - vertex
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i + 1; k < n; ++k) {
            const double d = distance(f.v[i], f.v[k]);
            if (d >= best || d <= zero) continue;
            if (vertex_critical(f, i, f.v[k], tol) && vertex_critical(f, k, f.v[i], tol)) consider(f.v[i], f.v[k]);
        }
    }
    // vertex - edge interior (perpendicular foot inside the closed edge)
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || (j + 1) % n == i) continue;
            const Vec3 e = f.edge[j];
            const double t = dot(f.v[i] - f.v[j], e) / norm2(e);
            if (t < 0.0 || t > 1.0) continue;
            const Vec3 foot = f.v[j] + e * t;
            const double d = distance(f.v[i], foot);
            if (d >= best || d <= zero) continue;
            if (vertex_critical(f, i, foot, tol)) consider(f.v[i], foot);
        }
    }
    // edge interior - edge interior (common perpendicular)
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 2; k < n; ++k) {
            if (edges_adjacent(n, j, k)) continue;
            const Vec3 u = f.edge[j];
            const Vec3 w = f.edge[k];
            const Vec3 r = f.v[j] - f.v[k];
            const double a = dot(u, u);
            const double b = dot(u, w);
            const double c = dot(w, w);
            const double denom = a * c - b * b;
            if (denom <= 1e-14 * a * c) {
                // Parallel lines: any overlap of the projections gives a doubly critical pair.
                const double t0 = dot(f.v[k] - f.v[j], u) / a;
                const double t1 = dot(f.v[k] + w - f.v[j], u) / a;
                const double lo = std::max(0.0, std::min(t0, t1));
                const double hi = std::min(1.0, std::max(t0, t1));
                if (hi < lo) continue;
                const Vec3 x = f.v[j] + u * (0.5 * (lo + hi));
                const Segment other{f.v[k], f.v[k] + w};
                consider(x, other.at(point_segment_distance(x, other).t));
                continue;
            }
            const double d_ = dot(u, r);
            const double e_ = dot(w, r);
            const double s = (b * e_ - c * d_) / denom;
            const double t = (a * e_ - b * d_) / denom;
            if (s < 0.0 || s > 1.0 || t < 0.0 || t > 1.0) continue;
            consider(f.v[j] + u * s, f.v[k] + w * t);
        }
    }
    return out;
}

}  // namespace

ThicknessReport thickness_unchecked(const PolygonalCurve& curve) {
    const PolygonalCurve image = merge_straight_vertices(curve, kStraightAngle);
    const Frame f = make_frame(image);
    const std::size_t n = f.v.size();

    ThicknessReport out;
    out.length = length(curve);
    out.min_rad = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 in = f.edge[(i + n - 1) % n];
        const Vec3 next = f.edge[i];
        const double theta = angle_between(in, next);
        if (theta >= std::numbers::pi - kCuspMargin) {
            std::ostringstream msg;
            msg << "cusp at vertex " << i << " (turning angle " << theta << ")";
            throw Error(ErrorKind::DegenerateGeometry, msg.str());
        }
        if (theta < kStraightAngle) continue;
        const double half_edge = 0.5 * std::min(norm(in), norm(next));
        const double rad = half_edge / std::tan(0.5 * theta);
        if (rad < out.min_rad) {
            out.min_rad = rad;
            out.min_rad_at = f.v[i];
        }
    }
    const Dcsd dc = doubly_critical_self_distance(f);
    out.dcsd = dc.distance;
    out.dcsd_at[0] = dc.x;
    out.dcsd_at[1] = dc.y;
    out.thickness = std::min(out.min_rad, 0.5 * out.dcsd);
    out.ropelength = out.length / out.thickness;
    return out;
}

ThicknessReport thickness(const PolygonalCurve& curve) {
    require_embedded(curve);
    return thickness_unchecked(curve);
}

WindowCheck window_feasible(const PolygonalCurve& curve, const WindowConfig& window) {
    const ThicknessReport t = thickness(curve);
    WindowCheck out;
    out.thi_slack = t.thickness - 1.0;
    out.len_slack = window.lambda * window.rop_reference - t.length;
    out.feasible = out.thi_slack >= -1e-9 && out.len_slack >= -1e-9;
    return out;
}

PolygonalCurve normalize_to_unit_thickness(const PolygonalCurve& curve) {
    const ThicknessReport t = thickness(curve);
    if (!(t.thickness > 0.0) || !std::isfinite(t.thickness)) {
        throw Error(ErrorKind::DegenerateGeometry, "thickness is not positive");
    }
    return scaled(curve, 1.0 / t.thickness);
}

}  // namespace knotspread
