#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace knotspread::cli {

struct Check {
    std::string name;
    bool pass = false;
    double observed = 0.0;
    double target = 0.0;
    double tolerance = 0.0;
};

/// Degeneration constants, circle values and the sin-power integral. Every
/// tolerance is multiplied by `tolerance_scale`.
std::vector<Check> constants_suite(double tolerance_scale);

/// Randomized identities and bounds on curves drawn from `seed`.
std::vector<Check> properties_suite(std::uint64_t seed, double tolerance_scale);

}  // namespace knotspread::cli
