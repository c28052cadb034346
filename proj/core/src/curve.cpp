#include "knotspread/curve.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "knotspread/error.hpp"

namespace knotspread {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "invalid-argument";
        case ErrorKind::Parse: return "parse";
        case ErrorKind::NotEmbedded: return "not-embedded";
        case ErrorKind::Quadrature: return "quadrature";
        case ErrorKind::SingularityTooStrong: return "singularity-too-strong";
        case ErrorKind::Locality: return "locality";
        case ErrorKind::Infeasible: return "infeasible";
        case ErrorKind::GuardMismatch: return "guard-mismatch";
        case ErrorKind::DegenerateGeometry: return "degenerate-geometry";
    }
    return "unknown";
}

PolygonalCurve::PolygonalCurve(std::vector<Vertex3> vertices) : vertices_(std::move(vertices)) {
    const std::size_t n = vertices_.size();
    if (n < 3) {
        throw Error(ErrorKind::InvalidArgument, "a closed polygon needs at least 3 vertices");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!is_finite(vertices_[i])) {
            throw Error(ErrorKind::InvalidArgument, "non-finite vertex coordinate");
        }
        total += distance(vertices_[i], vertices_[(i + 1) % n]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (distance(vertices_[i], vertices_[(i + 1) % n]) <= 1e-12 * total) {
            std::ostringstream msg;
            msg << "edge " << i << " is degenerate (length below 1e-12 of total length)";
            throw Error(ErrorKind::InvalidArgument, msg.str());
        }
    }
}

bool edges_adjacent(std::size_t n, std::size_t i, std::size_t j) noexcept {
    if (i == j) return true;
    const std::size_t d = i > j ? i - j : j - i;
    return d == 1 || d == n - 1;
}

double length(const PolygonalCurve& curve) {
    double total = 0.0;
    for (std::size_t i = 0; i < curve.size(); ++i) total += curve.edge_length(static_cast<std::ptrdiff_t>(i));
    return total;
}

double diameter(const PolygonalCurve& curve) {
    // |x - y| is convex along each segment, so the maximum sits at a vertex pair.
    const auto v = curve.vertices();
    double best = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) best = std::max(best, norm2(v[i] - v[j]));
    }
    return std::sqrt(best);
}

Vertex3 center_of_mass(const PolygonalCurve& curve) {
    Vec3 acc;
    double total = 0.0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const Segment e = curve.edge(static_cast<std::ptrdiff_t>(i));
        const double l = e.length();
        acc += (e.a + e.b) * (0.5 * l);
        total += l;
    }
    return acc / total;
}

double radius_of_gyration(const PolygonalCurve& curve) {
    const Vec3 c = center_of_mass(curve);
    double acc = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const Segment e = curve.edge(static_cast<std::ptrdiff_t>(i));
        const Vec3 ac = e.a - c;
        const Vec3 d = e.delta();
        const double l = norm(d);
        // integral over t in [0,1] of |a + t(b-a) - c|^2
        acc += l * (norm2(ac) + dot(ac, d) + norm2(d) / 3.0);
        total += l;
    }
    return std::sqrt(std::max(acc / total, 0.0));
}

double turning_angle(const PolygonalCurve& curve, std::size_t i) {
    const auto k = static_cast<std::ptrdiff_t>(i);
    return angle_between(curve.vertex(k) - curve.vertex(k - 1), curve.vertex(k + 1) - curve.vertex(k));
}

EmbeddingReport validate_embedded(const PolygonalCurve& curve) {
    const std::size_t n = curve.size();
    const double tol = 1e-12 * length(curve);
    EmbeddingReport report;
    report.min_nonadjacent_gap = std::numeric_limits<double>::infinity();

    // Adjacent edges may only share their common vertex: a fold-back overlaps.
    for (std::size_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::ptrdiff_t>(i);
        const double interior = angle_between(curve.vertex(k - 1) - curve.vertex(k),
                                              curve.vertex(k + 1) - curve.vertex(k));
        if (interior <= 1e-12) {
            report.is_embedded = false;
            report.offending_pair = std::pair{curve.wrap(k - 1), i};
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        const Segment ei = curve.edge(static_cast<std::ptrdiff_t>(i));
        for (std::size_t j = i + 2; j < n; ++j) {
            if (edges_adjacent(n, i, j)) continue;
            const double d = segment_distance(ei, curve.edge(static_cast<std::ptrdiff_t>(j))).distance;
            if (d < report.min_nonadjacent_gap) {
                report.min_nonadjacent_gap = d;
                if (d <= tol) {
                    report.is_embedded = false;
                    report.offending_pair = std::pair{i, j};
                }
            }
        }
    }
    return report;
}

void require_embedded(const PolygonalCurve& curve) {
    const EmbeddingReport report = validate_embedded(curve);
    if (!report.is_embedded) {
        std::ostringstream msg;
        msg << "curve is not embedded";
        if (report.offending_pair) {
            msg << " (edges " << report.offending_pair->first << " and " << report.offending_pair->second << ")";
        }
        throw Error(ErrorKind::NotEmbedded, msg.str());
    }
}

PolygonalCurve transform(const PolygonalCurve& curve, const Similarity& similarity) {
    if (!(similarity.scale > 0.0) || !std::isfinite(similarity.scale)) {
        throw Error(ErrorKind::InvalidArgument, "similarity scale must be positive");
    }
    std::vector<Vertex3> out;
    out.reserve(curve.size());
    for (const Vertex3& v : curve.vertices()) {
        out.push_back(similarity.rotation.apply(v) * similarity.scale + similarity.translation);
    }
    return PolygonalCurve(std::move(out));
}

PolygonalCurve scaled(const PolygonalCurve& curve, double factor) {
    Similarity s;
    s.scale = factor;
    return transform(curve, s);
}

PolygonalCurve subdivide(const PolygonalCurve& curve, int per_edge_splits) {
    if (per_edge_splits < 1) throw Error(ErrorKind::InvalidArgument, "per_edge_splits must be >= 1");
    if (per_edge_splits == 1) return curve;
    std::vector<Vertex3> out;
    out.reserve(curve.size() * static_cast<std::size_t>(per_edge_splits));
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const Segment e = curve.edge(static_cast<std::ptrdiff_t>(i));
        out.push_back(e.a);
        for (int k = 1; k < per_edge_splits; ++k) out.push_back(e.at(static_cast<double>(k) / per_edge_splits));
    }
    return PolygonalCurve(std::move(out));
}

PolygonalCurve merge_straight_vertices(const PolygonalCurve& curve, double angle_tol) {
    std::vector<Vertex3> kept;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (turning_angle(curve, i) >= angle_tol) kept.push_back(curve.vertex(static_cast<std::ptrdiff_t>(i)));
    }
    if (kept.size() < 3) return curve;
    return PolygonalCurve(std::move(kept));
}

}  // namespace knotspread
