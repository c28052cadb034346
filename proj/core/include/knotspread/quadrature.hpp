#pragma once

#include <span>
#include <vector>

namespace knotspread {

struct QuadratureConfig {
    int base_nodes = 8;     ///< tensor Gauss nodes per panel, >= 2
    int max_depth = 24;     ///< adaptive bisection depth, <= 40
    double rel_tol = 1e-7;  ///< in (0, 1)
    bool deterministic = true;
    int threads = 1;        ///< worker threads for the pair sweep

    /// Throws Error(InvalidArgument) when a field is out of range.
    void validate() const;
};

/// Gauss-Legendre rule on [0, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Rule with `n` nodes; cached per n and safe to call concurrently.
const GaussRule& gauss_legendre(int n);

}  // namespace knotspread
