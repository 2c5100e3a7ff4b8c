#include "oos/numfmt.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace oos {

std::string format_mps_value(double v) {
    if (!std::isfinite(v))
        throw std::invalid_argument("unrepresentable coefficient (non-finite)");
    if (v == 0.0) return "0";
    char buf[40];
    for (int digits = 12; digits >= 4; --digits) {
        std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
        if (std::string_view(buf).size() <= 12) return buf;
    }
    throw std::invalid_argument("unrepresentable coefficient magnitude");
}

double snap_mps_value(double v) {
    if (v == 0.0) return 0.0;
    return std::strtod(format_mps_value(v).c_str(), nullptr);
}

}  // namespace oos
