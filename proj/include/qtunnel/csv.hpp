#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace qtunnel {

// 17 significant digits: every finite double reparses to the identical bit
// pattern. Infinities become the literal tokens inf / -inf.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0.0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::string format_int(long long x) { return std::to_string(x); }

}  // namespace qtunnel
