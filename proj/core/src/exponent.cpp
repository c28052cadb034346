#include "knotspread/exponent.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "knotspread/error.hpp"

namespace knotspread {

Exponent Exponent::finite(double p) {
    if (!std::isfinite(p) || p <= -1.0) {
        throw Error(ErrorKind::InvalidArgument, "finite exponent must satisfy p > -1");
    }
    if (p == 0.0) {
        throw Error(ErrorKind::InvalidArgument, "p = 0 is the Log regime; use Exponent::log()");
    }
    return Exponent(Regime::Finite, p);
}

Exponent Exponent::parse(std::string_view text) {
    if (text == "log" || text == "0") return log();
    if (text == "inf" || text == "infinity") return diameter();
    double p = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, p);
    if (ec != std::errc() || ptr != last) {
        throw Error(ErrorKind::InvalidArgument, "cannot parse exponent '" + std::string(text) + "'");
    }
    if (p == 0.0) return log();
    return finite(p);
}

std::string Exponent::to_string() const {
    switch (regime_) {
        case Regime::Log: return "log";
        case Regime::Diameter: return "inf";
        case Regime::Finite: break;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", p_);
    return buf;
}

}  // namespace knotspread
