#pragma once

#include <charconv>
#include <string>

namespace equical {

// Shortest round-trip decimal form; keeps CSV output bit-reproducible.
inline std::string format_double(double x) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

}  // namespace equical
