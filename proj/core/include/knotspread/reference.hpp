#pragma once

#include "knotspread/exponent.hpp"

namespace knotspread {

/// Integral of sin(theta)^p over [0, pi], by graded Gauss panels toward the endpoints. Requires p > -1.
double sin_power_integral(double p);

/// Same integral from the Beta identity sqrt(pi) Gamma((p+1)/2) / Gamma(p/2 + 1), via std::lgamma.
/// Kept independent of the quadrature route so the two can check each other.
double sin_power_integral_beta(double p);

/// D_p of a round circle of length L.
double circle_spread(double total_length, const Exponent& exponent);

/// The degeneration constant c_p = L / circle_spread(L, p): 2 pi for Log, 2 for Diameter, and
/// pi (pi / int sin^p)^(1/p) for finite p in (-1, 2]. Finite p > 2 is rejected.
double degenerate_constant(const Exponent& exponent);

/// Chord length per unit length of a circle between points a fraction `u_fraction` of the
/// length apart: sin(pi u) / pi. `p` only has to be a valid exponent (> -1).
double circle_fixed_chord_ratio(double p, double u_fraction);

}  // namespace knotspread
