#pragma once

// Brute-force oracles for the test suite. Deliberately independent of the
// search engine: plain double loops over full-circle grids, no symmetry
// reduction, no refinement, and a from-scratch gauge evaluation.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "banach/spaces.hpp"

namespace oracles {

template <class F>
double brute_force_sup(const banach::NormedSpace& space, F&& f, int n) {
  double best = -std::numeric_limits<double>::infinity();
  std::vector<banach::VecN> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    pts.push_back(space.sphere_point_2d(2.0 * std::numbers::pi * k / n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      best = std::max(best, f(std::span<const double>(pts[static_cast<std::size_t>(i)]),
                              std::span<const double>(pts[static_cast<std::size_t>(j)])));
  return best;
}

template <class F>
double brute_force_inf_constrained(const banach::NormedSpace& space, F&& obj, double eps, int n) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<banach::VecN> pts;
  for (int k = 0; k < n; ++k)
    pts.push_back(space.sphere_point_2d(2.0 * std::numbers::pi * k / n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      banach::VecN d{pts[static_cast<std::size_t>(i)][0] - pts[static_cast<std::size_t>(j)][0],
                     pts[static_cast<std::size_t>(i)][1] - pts[static_cast<std::size_t>(j)][1]};
      if (space.norm(d) < eps - 1e-12) continue;
      best = std::min(best, obj(std::span<const double>(pts[static_cast<std::size_t>(i)]),
                                std::span<const double>(pts[static_cast<std::size_t>(j)])));
    }
  return best;
}

/// Gauge of a symmetric 2-D polytope by scaling bisection against a
/// point-in-convex-polygon test (angular sort + cross products).
inline double gauge_bisection(std::vector<banach::VecN> pts, const banach::VecN& v) {
  if (v[0] == 0.0 && v[1] == 0.0) return 0.0;
  std::sort(pts.begin(), pts.end(), [](const banach::VecN& a, const banach::VecN& b) {
    return std::atan2(a[1], a[0]) < std::atan2(b[1], b[0]);
  });
  auto inside = [&](double px, double py) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& a = pts[i];
      const auto& b = pts[(i + 1) % pts.size()];
      double cross = (b[0] - a[0]) * (py - a[1]) - (b[1] - a[1]) * (px - a[0]);
      if (cross < -1e-12) return false;
    }
    return true;
  };
  double hi = 1.0;
  while (!inside(v[0] / hi, v[1] / hi)) hi *= 2.0;
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (inside(v[0] / mid, v[1] / mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

inline std::filesystem::path write_temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("banach_test_" + name);
  std::ofstream f(path);
  f << text;
  return path;
}

}  // namespace oracles
