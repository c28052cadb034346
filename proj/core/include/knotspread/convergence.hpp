#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "knotspread/constructions.hpp"
#include "knotspread/exponent.hpp"
#include "knotspread/quadrature.hpp"

namespace knotspread {

struct ConvergenceRow {
    double parameter = 0.0;
    double value = 0.0;  ///< density ratio, or D_p for the p -> 0 table
    double error = 0.0;  ///< |value - target| / target
    std::optional<std::uint64_t> determinant;
};

/// Rows run along the limit: increasing n, decreasing r, increasing R/eps, decreasing |p|.
struct ConvergenceTable {
    std::string experiment;
    std::string parameter_name;
    std::string value_name;
    std::string exponent;
    double target = 0.0;
    std::vector<ConvergenceRow> rows;
    /// Least-squares slope of log(error) against log(h) over the last half of the rows,
    /// where h is the step toward the limit (1/n, r, eps/R or |p|). NaN with fewer than two usable rows.
    double fitted_order = 0.0;
    std::vector<std::string> warnings;
};

/// density_ratio(regular_ngon(n, 1), p) against the round-circle ratio, which is c_p
/// for -1 < p <= 2 and pi for the Diameter regime.
ConvergenceTable ngon_convergence(const Exponent& p, std::vector<int> n_list, const QuadratureConfig& cfg = {});

/// Pattern inserted into the regular 256-gon of circumradius 1 at ball radius r, against c_p.
/// For the Diameter regime the parameters are aspect ratios R/eps of stadium_with_knot
/// (eps = 1, 512 vertices) and the target is 2.
ConvergenceTable local_knot_degeneration(const Exponent& p, const KnotArcPattern& pattern,
                                         std::vector<double> parameters, const QuadratureConfig& cfg = {});

/// D_p(curve) for small |p| against D_0(curve).
ConvergenceTable pzero_continuity(const PolygonalCurve& curve, std::vector<double> p_list,
                                  const QuadratureConfig& cfg = {});

/// The order fit used by the tables; `h` and `error` are matched columns.
double fit_decay_order(const std::vector<double>& h, const std::vector<double>& error);

}  // namespace knotspread
