#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "knotspread/curve.hpp"
#include "knotspread/exponent.hpp"
#include "knotspread/geometry.hpp"
#include "knotspread/quadrature.hpp"

namespace knotspread {

enum class SpreadMethod { ExactP2, ClosedForm, Quadrature, Diameter };

const char* to_string(SpreadMethod method) noexcept;

/// D_p of a curve together with the normalized double integral it came from.
struct SpreadValue {
    double value = 0.0;
    /// L^-2 * double integral of |x-y|^p (Finite) or of log|x-y| (Log); diameter for Diameter.
    double raw_moment = 0.0;
    /// Estimated absolute error of `value`.
    double err_estimate = 0.0;
    SpreadMethod method = SpreadMethod::Quadrature;
};

/// A pair integral and its estimated absolute error.
struct PairIntegral {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
};

/// Integral over one straight edge against itself: 2 l^(p+2) / ((p+1)(p+2)), or l^2 (ln l - 3/2).
double chord_integral_same_segment(double edge_length, const Exponent& exponent);

/// Integral of k(|x-y|) ds dt over two segments. Shared-vertex pairs use graded panels
/// toward the corner; identical segments use the closed form.
PairIntegral chord_integral_pair(const Segment& a, const Segment& b, const Exponent& exponent,
                                 const QuadratureConfig& cfg = {});

/// Exact integral of |x-y|^2 over two segments (polynomial kernel).
double chord_integral_pair_p2(const Segment& a, const Segment& b);

/// D_p(curve). Finite(2) takes the exact polynomial path unless `force_quadrature` is set.
SpreadValue spread(const PolygonalCurve& curve, const Exponent& exponent, const QuadratureConfig& cfg = {},
                   bool force_quadrature = false);

/// length / D_p.
double density_ratio(const PolygonalCurve& curve, const Exponent& exponent, const QuadratureConfig& cfg = {});

struct PLimitCheck {
    double d_plus = 0.0;   ///< D_{+1e-3}
    double d_minus = 0.0;  ///< D_{-1e-3}
    double d_zero = 0.0;   ///< D_0
};

PLimitCheck spread_p_limit_check(const PolygonalCurve& curve, const QuadratureConfig& cfg = {});

/// Edge-pair cache for repeated D_p evaluation under single-vertex moves.
///
/// Holds every unordered edge-pair integral; moving vertex k only recomputes the
/// rows of edges k-1 and k. The total is re-summed in index order, so results do
/// not depend on the update history.
class SpreadEvaluator {
public:
    SpreadEvaluator(const PolygonalCurve& curve, Exponent exponent, QuadratureConfig cfg = {});

    const PolygonalCurve& curve() const noexcept { return curve_; }
    const Exponent& exponent() const noexcept { return exponent_; }

    SpreadValue value() const;
    double ratio() const { return length_ / value().value; }

    /// Replaces the curve by one that differs only at vertex `k`.
    void move_vertex(std::size_t k, const PolygonalCurve& moved);
    /// Value the evaluator would report after move_vertex(k, moved), without committing.
    /// The pending move is kept until the next propose(), commit() or reset().
    SpreadValue propose(std::size_t k, const PolygonalCurve& moved);
    /// Applies the last proposed move.
    void commit();
    /// Scales the cached curve and pair integrals by `factor` > 0 (homogeneity of the kernel).
    void rescale(double factor);
    /// Full recompute for an arbitrary new curve with the same vertex count.
    void reset(const PolygonalCurve& curve);

private:
    void compute_row(std::size_t i);
    std::size_t index(std::size_t i, std::size_t j) const noexcept;
    std::vector<std::pair<std::size_t, PairIntegral>> updates_for(std::size_t k, const PolygonalCurve& moved) const;

    struct Pending {
        PolygonalCurve curve;
        std::vector<std::pair<std::size_t, PairIntegral>> updates;
    };

    PolygonalCurve curve_;
    Exponent exponent_;
    QuadratureConfig cfg_;
    double length_ = 0.0;
    std::vector<PairIntegral> pairs_;  // upper triangle including diagonal, row-major
    std::optional<Pending> pending_;
};

}  // namespace knotspread
