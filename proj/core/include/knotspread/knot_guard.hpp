#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "knotspread/curve.hpp"

namespace knotspread {

struct KnotGuardReport {
    std::uint64_t determinant = 1;  ///< odd, >= 1
    std::size_t crossings_used = 0;
    Vec3 projection_axis{};
};

/// One double point of a generic projection. Positions are (edge index, parameter in (0,1)).
struct Crossing {
    std::size_t over_edge = 0;
    double over_t = 0.0;
    std::size_t under_edge = 0;
    double under_t = 0.0;
    /// +1 when the under strand points counterclockwise of the over strand in the
    /// projection plane (seen from +axis).
    int turn = 0;
};

struct Diagram {
    Vec3 axis{};
    std::vector<Crossing> crossings;
};

/// Projects along `axis` (need not be unit). Throws DegenerateGeometry when the
/// projection is not generic: a crossing parameter within 1e-9 of an edge end,
/// height separation below 1e-9 * length, or overlapping collinear images.
Diagram project_diagram(const PolygonalCurve& curve, const Vec3& axis);

/// Knot determinant via the Goeritz matrix of a checkerboard colouring. The
/// projection axis is drawn from a generator seeded with `seed`; non-generic
/// axes are skipped (at most 64 tries, then DegenerateGeometry).
KnotGuardReport knot_determinant(const PolygonalCurve& curve, std::uint64_t seed = 1);

/// Same, for a known generic axis.
KnotGuardReport knot_determinant_along(const PolygonalCurve& curve, const Vec3& axis);

}  // namespace knotspread
