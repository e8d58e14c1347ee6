#pragma once

#include <cstdio>
#include <string>

#include "wco/common.hpp"

namespace wco {

/// Short human-readable number (%.6g, with -0 folded to 0).
inline std::string format_real(double x, int digits = 6) {
  if (x == 0.0) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

inline std::string format_complex(cplx z, int digits = 6) {
  const double scale = std::abs(z);
  const double eps = 1e-12 * std::max(scale, 1.0);
  const double re = std::abs(z.real()) <= eps ? 0.0 : z.real();
  const double im = std::abs(z.imag()) <= eps ? 0.0 : z.imag();
  if (im == 0.0) return format_real(re, digits);
  if (re == 0.0) return format_real(im, digits) + "i";
  return format_real(re, digits) + (im < 0 ? "-" : "+") + format_real(std::abs(im), digits) + "i";
}

}  // namespace wco
