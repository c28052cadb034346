#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "knotspread/curve.hpp"
#include "knotspread/curve_io.hpp"

namespace knotspread {

/// Open polygonal arc in the closed unit ball running from (-1,0,0) to (1,0,0),
/// with straight collars along the x axis at both ends.
struct KnotArcPattern {
    std::string name;
    std::vector<Vertex3> arc_vertices;
    std::uint64_t expected_determinant = 1;

    double arc_length() const;
    /// The arc closed by a rectangular return path outside the unit ball.
    PolygonalCurve closed_by_axis() const;
};

/// Checks the pattern invariants; throws InvalidArgument on violation.
void validate_pattern(const KnotArcPattern& pattern);

/// "trefoil" (determinant 3) or "figure_eight" (determinant 5).
KnotArcPattern builtin_pattern(const std::string& name);

/// The straight arc from (-1,0,0) to (1,0,0).
KnotArcPattern straight_pattern();

/// Reads a pattern from curve-format text; header comments "name: ..." and
/// "expected_determinant: ..." supply the metadata.
KnotArcPattern pattern_from_file(const CurveFile& file);
CurveFile pattern_to_file(const KnotArcPattern& pattern);

/// Planar regular polygon in the xy plane, circumradius r, first vertex at angle pi/n.
PolygonalCurve regular_ngon(int n, double r);

/// Replaces the piece of `host` inside the ball of radius r around the midpoint
/// of edge `edge_index` by the pattern, placed along the chord joining the two
/// points where the host crosses the sphere. When that ball meets only the chosen
/// edge the chord has length 2r and the pattern is scaled by r.
///
/// Throws Locality if the ball meets the host in more than one subarc, or if the
/// result is not embedded.
PolygonalCurve insert_local_knot(const PolygonalCurve& host, const KnotArcPattern& pattern,
                                 std::size_t edge_index, double r);

/// Two straight strands y = +-eps for |x| <= R joined by semicircular caps of radius eps.
/// n >= 16 vertices in total. The top strand always has an odd number of edges.
PolygonalCurve stadium_curve(double R, double eps, int n);

/// stadium_curve with `pattern` inserted at the middle of the top strand, ball radius eps/2.
PolygonalCurve stadium_with_knot(double R, double eps, int n, const KnotArcPattern& pattern);

/// Random unknotted embedded n-gon: vertex angles increase around the z axis with
/// random radius in [0.4, 1.6] and height in [-0.6, 0.6].
PolygonalCurve random_embedded_polygon(int n, std::mt19937_64& rng);

}  // namespace knotspread
