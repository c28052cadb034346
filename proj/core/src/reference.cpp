#include "knotspread/reference.hpp"

#include <cmath>
#include <numbers>

#include "knotspread/error.hpp"
#include "knotspread/quadrature.hpp"

namespace knotspread {

namespace {

constexpr double kPi = std::numbers::pi;

double panel(double p, double lo, double hi, const GaussRule& rule) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double theta = lo + (hi - lo) * rule.nodes[i];
        acc += rule.weights[i] * std::pow(std::sin(theta), p);
    }
    return acc * (hi - lo);
}

double adaptive_panel(double p, double lo, double hi, int depth) {
    const double fine = panel(p, lo, hi, gauss_legendre(20));
    const double coarse = panel(p, lo, hi, gauss_legendre(14));
    if (std::abs(fine - coarse) <= 1e-15 * std::abs(fine) || depth >= 20) return fine;
    const double mid = 0.5 * (lo + hi);
    return adaptive_panel(p, lo, mid, depth + 1) + adaptive_panel(p, mid, hi, depth + 1);
}

}  // namespace

double sin_power_integral(double p) {
    if (!(p > -1.0) || !std::isfinite(p)) throw Error(ErrorKind::InvalidArgument, "sin_power_integral needs p > -1");
    // Symmetric about pi/2; grade dyadically toward 0 where sin^p ~ theta^p.
    constexpr int levels = 48;
    double hi = kPi / 2.0;
    double acc = 0.0;
    for (int j = 0; j < levels; ++j) {
        const double lo = 0.5 * hi;
        acc += adaptive_panel(p, lo, hi, 0);
        hi = lo;
    }
    // Tail [0, hi]: sin^p t = t^p (1 - p t^2 / 6 + ...).
    const double a = hi;
    const double tail = std::pow(a, p + 1.0) / (p + 1.0) - p * std::pow(a, p + 3.0) / (6.0 * (p + 3.0));
    return 2.0 * (acc + tail);
}

double sin_power_integral_beta(double p) {
    if (!(p > -1.0) || !std::isfinite(p)) throw Error(ErrorKind::InvalidArgument, "sin_power_integral needs p > -1");
    return std::sqrt(kPi) * std::exp(std::lgamma(0.5 * (p + 1.0)) - std::lgamma(0.5 * p + 1.0));
}

double circle_spread(double total_length, const Exponent& exponent) {
    if (!(total_length > 0.0)) throw Error(ErrorKind::InvalidArgument, "circle length must be positive");
    switch (exponent.regime()) {
        case Exponent::Regime::Log: return total_length / (2.0 * kPi);
        case Exponent::Regime::Diameter: return total_length / kPi;
        case Exponent::Regime::Finite: break;
    }
    const double p = exponent.p();
    const double mean = sin_power_integral(p) / kPi;
    return total_length / kPi * std::exp(std::log(mean) / p);
}

double degenerate_constant(const Exponent& exponent) {
    switch (exponent.regime()) {
        case Exponent::Regime::Log: return 2.0 * kPi;
        case Exponent::Regime::Diameter: return 2.0;
        case Exponent::Regime::Finite: break;
    }
    const double p = exponent.p();
    if (p > 2.0) {
        throw Error(ErrorKind::InvalidArgument,
                    "no degeneration constant is asserted for finite p > 2 (open extremal problem)");
    }
    return kPi * std::exp(std::log(kPi / sin_power_integral(p)) / p);
}

double circle_fixed_chord_ratio(double p, double u_fraction) {
    if (!(p > -1.0)) throw Error(ErrorKind::InvalidArgument, "p must exceed -1");
    if (!(u_fraction > 0.0 && u_fraction <= 0.5)) throw Error(ErrorKind::InvalidArgument, "u_fraction must be in (0, 1/2]");
    return std::sin(kPi * u_fraction) / kPi;
}

}  // namespace knotspread
