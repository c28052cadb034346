#pragma once

#include <stdexcept>
#include <string>

namespace knotspread {

/// Failure categories. The CLI maps several of these onto stable exit codes.
enum class ErrorKind {
    InvalidArgument,
    Parse,
    NotEmbedded,
    Quadrature,
    SingularityTooStrong,
    Locality,
    Infeasible,
    GuardMismatch,
    DegenerateGeometry,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace knotspread
