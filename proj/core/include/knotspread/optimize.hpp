#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "knotspread/curve.hpp"
#include "knotspread/exponent.hpp"
#include "knotspread/knot_guard.hpp"
#include "knotspread/quadrature.hpp"
#include "knotspread/thickness.hpp"

namespace knotspread {

struct OptimizerConfig {
    std::uint64_t seed = 1;
    long max_iters = 20000;
    double initial_step = 0.3;   ///< move scale as a fraction of the mean edge length
    double cooling = 0.99;       ///< temperature factor applied every n accepted moves
    double temp0 = 1e-3;         ///< initial temperature, in units of relative objective change
    double penalty_thickness = 10.0;
    double penalty_length = 10.0;
    long resample_every = 1000;  ///< 0 disables arc-length re-equalization
    long trace_every = 0;        ///< 0 picks max(1, max_iters / 200)
    QuadratureConfig quadrature{};

    void validate() const;
};

enum class OptimizerMode { Ropelength, Windowed, Explore };

const char* to_string(OptimizerMode mode) noexcept;

struct TracePoint {
    long iteration = 0;
    double ratio = 0.0;       ///< current state
    double best_ratio = 0.0;  ///< running best over feasible states so far
    double thickness = 0.0;
    double length = 0.0;
};

inline constexpr const char* kExplorerBanner = "empirical upper-bound search, not a proof";

struct OptimizationResult {
    OptimizerMode mode = OptimizerMode::Ropelength;
    PolygonalCurve best_curve;
    /// Ropelength for Ropelength, length / D_p for Windowed, D_p / length for Explore.
    double best_ratio = 0.0;
    /// The same quantity for the starting curve.
    double initial_ratio = 0.0;
    std::vector<TracePoint> trace{};
    std::optional<WindowConfig> window{};
    std::optional<Exponent> exponent{};
    KnotGuardReport guard_start{};
    KnotGuardReport guard_end{};
    long accepted = 0;
    long rejected = 0;
    /// Explore only: circle_spread(L, p) / L.
    std::optional<double> circle_reference{};
    /// Explore only: kExplorerBanner.
    std::string banner{};
};

/// Anneals single-vertex moves to lower length / thickness. The best curve is
/// returned at unit thickness. Throws NotEmbedded, GuardMismatch.
OptimizationResult minimize_ropelength(const PolygonalCurve& initial, const OptimizerConfig& cfg);

/// Lowers length / D_p over curves with Thi >= 1 and length <= lambda * rop_reference.
/// Throws Infeasible when no feasible state is reached, GuardMismatch.
OptimizationResult minimize_windowed_density(const PolygonalCurve& initial, const Exponent& exponent,
                                             const WindowConfig& window, const OptimizerConfig& cfg);

/// Raises D_p / length for finite p >= 2 (p = 2 only as a calibration run).
OptimizationResult maximize_spread_ratio(const Exponent& exponent, const OptimizerConfig& cfg,
                                         const PolygonalCurve& initial);

/// True when moving vertex k of `curve` to `target` along a straight line sweeps
/// no other edge and leaves the polygon embedded with no near fold-back.
bool move_admissible(const PolygonalCurve& curve, std::size_t k, const Vertex3& target);

}  // namespace knotspread
