#pragma once

#include <string>
#include <string_view>

namespace knotspread {

/// The spread exponent p in (-1, inf], with p = 0 (Log) and p = inf (Diameter)
/// as distinct regimes.
class Exponent {
public:
    enum class Regime { Finite, Log, Diameter };

    /// Throws Error(InvalidArgument) for p <= -1, p == 0 or non-finite p.
    static Exponent finite(double p);
    static Exponent log() { return Exponent(Regime::Log, 0.0); }
    static Exponent diameter() { return Exponent(Regime::Diameter, 0.0); }

    /// Accepts a decimal, "log" or "inf".
    static Exponent parse(std::string_view text);

    Regime regime() const noexcept { return regime_; }
    bool is_finite() const noexcept { return regime_ == Regime::Finite; }
    bool is_log() const noexcept { return regime_ == Regime::Log; }
    bool is_diameter() const noexcept { return regime_ == Regime::Diameter; }
    /// The numeric exponent; only meaningful for Finite.
    double p() const noexcept { return p_; }

    std::string to_string() const;

    friend bool operator==(const Exponent&, const Exponent&) = default;

private:
    Exponent(Regime regime, double p) : regime_(regime), p_(p) {}

    Regime regime_;
    double p_;
};

}  // namespace knotspread
