#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace banach {

/// A point of R^n. Coordinates are expected to be finite; boundary code
/// (parsers, normalize, the axiom validator) checks, inner loops assume.
using VecN = std::vector<double>;

inline bool all_finite(std::span<const double> v) {
  for (double c : v)
    if (!std::isfinite(c)) return false;
  return true;
}

/// out = a*x + b*y, elementwise.
inline void lincomb(double a, std::span<const double> x, double b, std::span<const double> y,
                    std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * x[i] + b * y[i];
}

inline VecN scaled(std::span<const double> v, double s) {
  VecN r(v.begin(), v.end());
  for (double& c : r) c *= s;
  return r;
}

}  // namespace banach
