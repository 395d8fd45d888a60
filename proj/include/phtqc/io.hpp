#pragma once

#include <charconv>
#include <string>

namespace phtqc {

inline constexpr const char* kVersion = "0.1.0";

// Shortest round-trip decimal form, locale independent ('.' decimal point).
inline std::string fmt_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace phtqc
