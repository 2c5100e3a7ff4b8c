#pragma once

#include <string>

namespace oos {

/// Shortest decimal rendering of `v` that fits a 12-character fixed MPS
/// value field (>= 6 significant digits). Rejects NaN/Inf.
std::string format_mps_value(double v);

/// Snap `v` to the value its MPS rendering parses back to, so in-memory
/// coefficients and the written file agree bit-for-bit.
double snap_mps_value(double v);

}  // namespace oos
