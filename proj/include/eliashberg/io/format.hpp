#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

namespace eliashberg::io {

/// Twelve significant digits, shortest form.
inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Empty string for an absent value.
inline std::string format_optional(const std::optional<double>& v) { return v ? format_number(*v) : std::string{}; }

}  // namespace eliashberg::io
