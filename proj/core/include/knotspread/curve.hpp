#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "knotspread/geometry.hpp"
#include "knotspread/vec3.hpp"

namespace knotspread {

/// Closed polygon in 3-space. Edge i joins vertex i to vertex (i+1) mod n.
///
/// Construction enforces n >= 3, finite coordinates and edges longer than
/// 1e-12 times the total length. Embeddedness is not enforced here; see
/// validate_embedded().
class PolygonalCurve {
public:
    explicit PolygonalCurve(std::vector<Vertex3> vertices);

    std::size_t size() const noexcept { return vertices_.size(); }
    std::span<const Vertex3> vertices() const noexcept { return vertices_; }

    /// Cyclic vertex access; any integer index is reduced mod n.
    const Vertex3& vertex(std::ptrdiff_t i) const noexcept { return vertices_[wrap(i)]; }
    Segment edge(std::ptrdiff_t i) const noexcept { return {vertex(i), vertex(i + 1)}; }
    double edge_length(std::ptrdiff_t i) const noexcept { return edge(i).length(); }

    std::size_t wrap(std::ptrdiff_t i) const noexcept {
        const auto n = static_cast<std::ptrdiff_t>(vertices_.size());
        return static_cast<std::size_t>(((i % n) + n) % n);
    }

private:
    std::vector<Vertex3> vertices_;
};

/// Two edges are adjacent when they share a vertex (or are the same edge).
bool edges_adjacent(std::size_t n, std::size_t i, std::size_t j) noexcept;

struct EmbeddingReport {
    bool is_embedded = true;
    /// Smallest distance between non-adjacent edges; +inf when there are none (triangles).
    double min_nonadjacent_gap = 0.0;
    std::optional<std::pair<std::size_t, std::size_t>> offending_pair;
};

/// Euclidean similarity x -> scale * R x + translation.
struct Similarity {
    double scale = 1.0;
    Rotation rotation{};
    Vec3 translation{};
};

double length(const PolygonalCurve& curve);
double diameter(const PolygonalCurve& curve);
Vertex3 center_of_mass(const PolygonalCurve& curve);
double radius_of_gyration(const PolygonalCurve& curve);

/// Exterior (turning) angle at vertex i, in [0, pi].
double turning_angle(const PolygonalCurve& curve, std::size_t i);

EmbeddingReport validate_embedded(const PolygonalCurve& curve);

/// Throws Error(NotEmbedded) with the offending pair when the curve is not embedded.
void require_embedded(const PolygonalCurve& curve);

PolygonalCurve transform(const PolygonalCurve& curve, const Similarity& similarity);
PolygonalCurve scaled(const PolygonalCurve& curve, double factor);

/// Splits every edge into `per_edge_splits` equal pieces; original vertices are kept bit-exact.
PolygonalCurve subdivide(const PolygonalCurve& curve, int per_edge_splits);

/// Removes vertices whose turning angle is below `angle_tol`, merging collinear runs of edges.
PolygonalCurve merge_straight_vertices(const PolygonalCurve& curve, double angle_tol = 1e-10);

}  // namespace knotspread
