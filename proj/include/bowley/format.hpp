#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <string>

namespace bowley {

/// Locale-independent rendering of a double with `digits` significant digits.
/// 17 digits round-trips every finite double exactly.
inline std::string format_double(double value, int digits = 17) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                   std::chars_format::general, digits);
    if (ec != std::errc{}) return "nan";
    return std::string(buf.data(), end);
}

}  // namespace bowley
