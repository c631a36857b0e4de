#pragma once

#include <charconv>
#include <string>

namespace wsn {

// Canonical CSV number format: shortest of 12 significant digits,
// locale-independent. Parsing what we emit reproduces the same string.
inline std::string fmt_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v,
                             std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

}  // namespace wsn
