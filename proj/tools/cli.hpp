#pragma once

#include <iosfwd>

namespace knotspread::cli {

/// Exit codes.
enum Exit : int {
    kOk = 0,
    kCheckFailed = 1,
    kParse = 2,
    kNotEmbedded = 3,
    kQuadrature = 4,
    kLocality = 5,
    kInfeasible = 6,
    kGuard = 7,
};

/// Runs one command. Reports go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace knotspread::cli
