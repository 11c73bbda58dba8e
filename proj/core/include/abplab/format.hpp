#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace abplab {

/// 17 significant digits; "inf", "-inf", "nan" for non-finite values.
inline std::string format_g17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Shortest of %.{6..17}g that parses back to the same double.
inline std::string format_short(double v) {
  if (!std::isfinite(v)) return format_g17(v);
  char buf[40];
  for (int prec = 6; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace abplab
