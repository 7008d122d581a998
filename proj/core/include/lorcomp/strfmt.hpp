#ifndef LORCOMP_STRFMT_HPP
#define LORCOMP_STRFMT_HPP

#include <cstdio>
#include <string>

namespace lorcomp::detail {

// Shortest round-trip decimal form used by all text output.
inline std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace lorcomp::detail

#endif
