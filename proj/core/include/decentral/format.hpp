#pragma once

#include <charconv>
#include <cmath>
#include <optional>
#include <string>

namespace decentral {

/// Shortest decimal string that parses back to the same double.
inline std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    (void)ec;
    return std::string(buf, end);
}

/// Empty string for a missing value.
inline std::string format_optional(const std::optional<double>& x) {
    return x ? format_double(*x) : std::string();
}

/// Fixed-point rendering used by human-readable tables.
inline std::string format_fixed(double x, int digits) {
    if (std::isnan(x)) return "nan";
    char buf[128];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::fixed, digits);
    if (ec != std::errc()) return format_double(x);
    return std::string(buf, end);
}

}  // namespace decentral
