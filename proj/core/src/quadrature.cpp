#include "knotspread/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

#include "knotspread/error.hpp"

namespace knotspread {

void QuadratureConfig::validate() const {
    if (base_nodes < 2 || base_nodes > 64) throw Error(ErrorKind::InvalidArgument, "base_nodes must be in [2, 64]");
    if (max_depth < 0 || max_depth > 40) throw Error(ErrorKind::InvalidArgument, "max_depth must be in [0, 40]");
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw Error(ErrorKind::InvalidArgument, "rel_tol must be in (0, 1)");
    if (threads < 1) throw Error(ErrorKind::InvalidArgument, "threads must be >= 1");
}

namespace {

// Returns {P_n(x), P_n'(x)} by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

GaussRule compute_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            const auto [pn, dpn] = legendre(n, x);
            const double dx = pn / dpn;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double dpn = legendre(n, x).second;
        // map [-1, 1] onto [0, 1]
        rule.nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
        rule.weights[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - x * x) * dpn * dpn);
    }
    return rule;
}

GaussRule midpoint_rule() { return {{0.5}, {1.0}}; }

}  // namespace

const GaussRule& gauss_legendre(int n) {
    static std::mutex mutex;
    static std::map<int, GaussRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, n == 1 ? midpoint_rule() : compute_rule(n)).first;
    return it->second;
}

}  // namespace knotspread
