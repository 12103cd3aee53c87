#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace hctgen {

inline double round_to(double v, int decimals) {
    double scale = std::pow(10.0, decimals);
    return std::round(v * scale) / scale;
}

// Fixed-point rendering, e.g. format_fixed(0.3, 2) == "0.30".
inline std::string format_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v + 0.0);  // +0.0 kills -0
    return buf;
}

// Minimal decimal rendering: integers print bare, otherwise trailing zeros
// are trimmed ("513.3", "533.75", "57").
inline std::string format_number(double v) {
    v += 0.0;
    if (v == std::floor(v) && std::fabs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", v);
        return buf;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    std::string s = buf;
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

}  // namespace hctgen
