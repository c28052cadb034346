#pragma once

#include "knotspread/curve.hpp"

namespace knotspread {

/// Polygonal thickness in the injectivity-radius model: min(MinRad, dcsd / 2).
struct ThicknessReport {
    double min_rad = 0.0;    ///< smallest vertex turning radius (+inf if every vertex is straight)
    double dcsd = 0.0;       ///< doubly-critical self-distance
    double thickness = 0.0;
    double ropelength = 0.0; ///< length / thickness
    double length = 0.0;
    Vertex3 min_rad_at{};     ///< vertex attaining min_rad
    Vertex3 dcsd_at[2] = {};  ///< pair of points attaining dcsd
};

/// Thickness is computed on the image: straight vertices are merged first, so
/// subdivision does not change any field. Throws NotEmbedded, or DegenerateGeometry
/// for a cusp (turning angle >= pi - 1e-9).
ThicknessReport thickness(const PolygonalCurve& curve);

/// Thickness without the embeddedness sweep (callers that already guarantee it).
ThicknessReport thickness_unchecked(const PolygonalCurve& curve);

struct WindowConfig {
    double lambda = 1.0;         ///< >= 1
    double rop_reference = 0.0;  ///< estimate of Rop(K), > 0
};

struct WindowCheck {
    bool feasible = false;
    double thi_slack = 0.0;  ///< thickness - 1
    double len_slack = 0.0;  ///< lambda * rop_reference - length
};

/// Thickness >= 1 and length <= lambda * rop_reference, each with 1e-9 slack.
WindowCheck window_feasible(const PolygonalCurve& curve, const WindowConfig& window);

/// Scales the curve by 1 / thickness.
PolygonalCurve normalize_to_unit_thickness(const PolygonalCurve& curve);

}  // namespace knotspread
