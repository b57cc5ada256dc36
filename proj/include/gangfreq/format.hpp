#pragma once

#include <cstdio>
#include <string>

namespace gangfreq {

// Canonical real rendering used by every emitted document: up to 12
// significant digits, shortest form. Values that round-trip through this
// format re-serialize byte-identically.
inline std::string format_real(double value) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

}  // namespace gangfreq
