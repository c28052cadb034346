#include "knotspread/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "knotspread/error.hpp"
#include "knotspread/knot_guard.hpp"
#include "knotspread/reference.hpp"
#include "knotspread/spread.hpp"

namespace knotspread {

namespace {

bool in_mean_chord_range(const Exponent& p) { return p.is_log() || (p.is_finite() && p.p() <= 2.0); }

double relative_gap(double value, double target) { return std::abs(value - target) / std::abs(target); }

/// Fills fitted_order and warns about a non-monotone error tail.
void finish_table(ConvergenceTable& t, const std::vector<double>& h) {
    std::vector<double> err;
    err.reserve(t.rows.size());
    for (const auto& r : t.rows) err.push_back(r.error);
    t.fitted_order = fit_decay_order(h, err);
    const std::size_t start = t.rows.size() / 2;
    for (std::size_t i = start + 1; i < t.rows.size(); ++i) {
        if (t.rows[i].error > t.rows[i - 1].error) {
            std::ostringstream msg;
            msg << "error grows between " << t.parameter_name << "=" << t.rows[i - 1].parameter << " and "
                << t.rows[i].parameter;
            t.warnings.push_back(msg.str());
        }
    }
}

}  // namespace

double fit_decay_order(const std::vector<double>& h, const std::vector<double>& error) {
    if (h.size() != error.size()) throw Error(ErrorKind::InvalidArgument, "column length mismatch");
    const std::size_t n = h.size();
    const std::size_t take = std::max<std::size_t>(2, (n + 1) / 2);
    std::vector<double> x, y;
    for (std::size_t i = n - std::min(n, take); i < n; ++i) {
        if (h[i] > 0.0 && error[i] > 0.0 && std::isfinite(error[i])) {
            x.push_back(std::log(h[i]));
            y.push_back(std::log(error[i]));
        }
    }
    if (x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    const double m = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / m;
    const double my = sy / m;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return sxy / sxx;
}

ConvergenceTable ngon_convergence(const Exponent& p, std::vector<int> n_list, const QuadratureConfig& cfg) {
    if (!in_mean_chord_range(p) && !p.is_diameter()) {
        throw Error(ErrorKind::InvalidArgument, "ngon table needs p in (-1, 2], log or inf");
    }
    if (n_list.empty()) throw Error(ErrorKind::InvalidArgument, "empty n list");
    std::sort(n_list.begin(), n_list.end());
    ConvergenceTable t;
    t.experiment = "ngon";
    t.parameter_name = "n";
    t.value_name = "ratio";
    t.exponent = p.to_string();
    t.target = 2.0 * std::numbers::pi / circle_spread(2.0 * std::numbers::pi, p);
    std::vector<double> h;
    for (int n : n_list) {
        const double ratio = density_ratio(regular_ngon(n, 1.0), p, cfg);
        t.rows.push_back({static_cast<double>(n), ratio, relative_gap(ratio, t.target), std::nullopt});
        h.push_back(1.0 / n);
    }
    finish_table(t, h);
    return t;
}

ConvergenceTable local_knot_degeneration(const Exponent& p, const KnotArcPattern& pattern,
                                         std::vector<double> parameters, const QuadratureConfig& cfg) {
    if (parameters.empty()) throw Error(ErrorKind::InvalidArgument, "empty parameter list");
    ConvergenceTable t;
    t.experiment = "localknot";
    t.value_name = "ratio";
    t.exponent = p.to_string();
    std::vector<double> h;
    if (p.is_diameter()) {
        std::sort(parameters.begin(), parameters.end());
        t.parameter_name = "R/eps";
        t.target = degenerate_constant(p);
        for (double aspect : parameters) {
            const PolygonalCurve c = stadium_with_knot(aspect, 1.0, 512, pattern);
            const double ratio = length(c) / diameter(c);
            t.rows.push_back({aspect, ratio, relative_gap(ratio, t.target), knot_determinant(c).determinant});
            h.push_back(1.0 / aspect);
        }
    } else {
        if (!in_mean_chord_range(p)) throw Error(ErrorKind::InvalidArgument, "localknot table needs p in (-1, 2], log or inf");
        std::sort(parameters.begin(), parameters.end(), std::greater<>());
        t.parameter_name = "r";
        t.target = degenerate_constant(p);
        const PolygonalCurve host = regular_ngon(256, 1.0);
        for (double r : parameters) {
            const PolygonalCurve c = insert_local_knot(host, pattern, 0, r);
            const double ratio = density_ratio(c, p, cfg);
            t.rows.push_back({r, ratio, relative_gap(ratio, t.target), knot_determinant(c).determinant});
            h.push_back(r);
        }
    }
    finish_table(t, h);
    return t;
}

ConvergenceTable pzero_continuity(const PolygonalCurve& curve, std::vector<double> p_list, const QuadratureConfig& cfg) {
    if (p_list.empty()) throw Error(ErrorKind::InvalidArgument, "empty p list");
    for (double p : p_list) {
        if (!(std::abs(p) <= 0.1) || p == 0.0) throw Error(ErrorKind::InvalidArgument, "pzero table needs 0 < |p| <= 0.1");
    }
    // Toward the limit: decreasing |p|, negative before positive at equal |p|.
    std::sort(p_list.begin(), p_list.end(), [](double a, double b) {
        if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
        return a < b;
    });
    ConvergenceTable t;
    t.experiment = "pzero";
    t.parameter_name = "p";
    t.value_name = "D_p";
    t.exponent = "near 0";
    t.target = spread(curve, Exponent::log(), cfg).value;
    std::vector<double> h;
    for (double p : p_list) {
        const double d = spread(curve, Exponent::finite(p), cfg).value;
        t.rows.push_back({p, d, relative_gap(d, t.target), std::nullopt});
        h.push_back(std::abs(p));
    }
    finish_table(t, h);
    return t;
}

}  // namespace knotspread
