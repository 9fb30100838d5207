#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "banach/detail/simplex.hpp"
#include "banach/errors.hpp"
#include "banach/vec.hpp"

namespace banach {

enum class Family { lp, euclidean, day_james, polyhedral };

/// The (kappa, tau) parameter pair; both strictly positive.
struct ParamPair {
  double kappa = 1.0;
  double tau = 1.0;

  void validate() const {
    if (!(kappa > 0.0) || !(tau > 0.0) || !std::isfinite(kappa) || !std::isfinite(tau))
      throw DomainError("kappa and tau must be finite and strictly positive");
  }
  double min() const { return std::min(kappa, tau); }
  double max() const { return std::max(kappa, tau); }
  double gap() const { return std::fabs(kappa - tau); }
};

namespace detail {

inline double ipow_abs(double x, int p) {
  double a = std::fabs(x), r = 1.0;
  while (p > 0) {
    if (p & 1) r *= a;
    a *= a;
    p >>= 1;
  }
  return r;
}

}  // namespace detail

/// A named norm on R^n. Immutable after construction; all evaluation
/// methods are const and safe to call from many threads.
class NormedSpace {
 public:
  static constexpr double inf = std::numeric_limits<double>::infinity();

  static NormedSpace lp(double p, int dim) {
    if (dim < 2) throw ParseError("space dimension must be at least 2");
    if (!(p >= 1.0))
      throw ParseError("lp exponent must satisfy p >= 1 (use \"inf\" for the sup norm)");
    NormedSpace s;
    s.family_ = Family::lp;
    s.dim_ = dim;
    s.p_ = p;
    if (p != inf && p == std::floor(p) && p <= 16.0) s.int_p_ = static_cast<int>(p);
    s.id_ = "lp:" + format_p(p) + ":" + std::to_string(dim);
    return s;
  }

  static NormedSpace euclidean(int dim) {
    if (dim < 2) throw ParseError("space dimension must be at least 2");
    NormedSpace s;
    s.family_ = Family::euclidean;
    s.dim_ = dim;
    s.p_ = 2.0;
    s.int_p_ = 2;
    s.id_ = "euclid:" + std::to_string(dim);
    return s;
  }

  /// The 2-D mixed norm: sup norm on same-sign vectors, taxicab norm on
  /// opposite-sign vectors. The branches agree when a coordinate is zero;
  /// the same-sign rule is applied there.
  static NormedSpace day_james() {
    NormedSpace s;
    s.family_ = Family::day_james;
    s.dim_ = 2;
    s.id_ = "dayjames";
    return s;
  }

  /// Minkowski gauge of the convex hull of `extreme_points`. The set must be
  /// origin-symmetric, span R^dim, and contain no point inside the hull of
  /// the others.
  static NormedSpace polyhedral(std::string id, std::vector<VecN> extreme_points) {
    NormedSpace s;
    s.family_ = Family::polyhedral;
    s.id_ = std::move(id);
    s.init_polyhedral(std::move(extreme_points));
    return s;
  }

  /// Catalog ids: "lp:<p>:<dim>" with p a decimal or "inf", "euclid:<dim>",
  /// "dayjames", "poly:<file>" (one extreme point per line).
  static NormedSpace from_id(const std::string& id);

  const std::string& id() const { return id_; }
  int dim() const { return dim_; }
  Family family() const { return family_; }
  double p() const { return p_; }
  bool is_hilbert() const {
    return family_ == Family::euclidean || (family_ == Family::lp && p_ == 2.0);
  }

  double norm(std::span<const double> v) const {
    if (static_cast<int>(v.size()) != dim_)
      throw DimensionError("vector has dimension " + std::to_string(v.size()) + ", space " +
                           id_ + " has dimension " + std::to_string(dim_));
    switch (family_) {
      case Family::euclidean:
        return norm_l2(v);
      case Family::lp:
        return norm_lp(v);
      case Family::day_james: {
        double a = v[0], b = v[1];
        if (a * b < 0.0) return std::fabs(a) + std::fabs(b);
        return std::max(std::fabs(a), std::fabs(b));
      }
      case Family::polyhedral:
        return gauge(v);
    }
    return 0.0;
  }

  double operator()(std::span<const double> v) const { return norm(v); }

  /// v / ||v||. Throws DegenerateInputError on the zero vector.
  VecN normalize(const VecN& v) const {
    if (!all_finite(v)) throw DegenerateInputError("normalize: non-finite coordinate");
    double n = norm(v);
    if (n == 0.0) throw DegenerateInputError("normalize: zero vector");
    VecN r = v;
    for (double& c : r) c /= n;
    return r;
  }

  /// (cos t, sin t) / ||(cos t, sin t)||; a unit vector for every t.
  VecN sphere_point_2d(double theta) const {
    if (dim_ != 2)
      throw UnsupportedSpaceError("sphere_point_2d requires dim == 2, space " + id_ +
                                  " has dim " + std::to_string(dim_));
    double c = std::cos(theta), s = std::sin(theta);
    double n = norm(std::array<double, 2>{c, s});
    return {c / n, s / n};
  }

  const std::vector<VecN>& extreme_points() const { return points_; }

  static std::string format_p(double p) {
    if (p == inf) return "inf";
    std::ostringstream os;
    os << p;
    return os.str();
  }

 private:
  NormedSpace() = default;

  double norm_l2(std::span<const double> v) const {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
  }

  double norm_lp(std::span<const double> v) const {
    if (p_ == inf) {
      double m = 0.0;
      for (double c : v) m = std::max(m, std::fabs(c));
      return m;
    }
    if (p_ == 1.0) {
      double s = 0.0;
      for (double c : v) s += std::fabs(c);
      return s;
    }
    if (int_p_ == 2) return norm_l2(v);
    if (int_p_ > 0) {
      double s = 0.0;
      for (double c : v) s += detail::ipow_abs(c, int_p_);
      return std::pow(s, 1.0 / p_);
    }
    // general exponent: scale out the max to stay in range
    double m = 0.0;
    for (double c : v) m = std::max(m, std::fabs(c));
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (double c : v) s += std::pow(std::fabs(c) / m, p_);
    return m * std::pow(s, 1.0 / p_);
  }

  // --- polyhedral support -------------------------------------------------

  void init_polyhedral(std::vector<VecN> pts);
  double gauge(std::span<const double> v) const;

  Family family_ = Family::euclidean;
  std::string id_;
  int dim_ = 2;
  double p_ = 2.0;
  int int_p_ = 0;                    // p when it is a small integer, else 0
  std::vector<VecN> points_;         // polyhedral extreme points
  std::vector<std::array<double, 2>> facets_;  // 2-D facet functionals a with a.x <= 1
};

namespace detail {

inline bool in_hull(const std::vector<VecN>& pts, std::size_t skip, std::span<const double> q,
                    int dim) {
  // feasibility of  sum l_i p_i = q, sum l_i = 1, l >= 0  over pts minus pts[skip]
  int n = 0;
  std::vector<double> A;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (k == skip) continue;
    ++n;
  }
  A.assign(static_cast<std::size_t>(dim + 1) * n, 0.0);
  int col = 0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (k == skip) continue;
    for (int i = 0; i < dim; ++i) A[static_cast<std::size_t>(i) * n + col] = pts[k][i];
    A[static_cast<std::size_t>(dim) * n + col] = 1.0;
    ++col;
  }
  std::vector<double> b(q.begin(), q.end());
  b.push_back(1.0);
  auto r = solve_lp(dim + 1, n, std::move(A), std::move(b), std::vector<double>(n, 0.0));
  return r.feasible;
}

inline int rank(const std::vector<VecN>& pts, int dim) {
  std::vector<std::vector<double>> rows;
  for (const auto& p : pts) rows.emplace_back(p.begin(), p.end());
  int rk = 0;
  for (int col = 0; col < dim && rk < static_cast<int>(rows.size()); ++col) {
    int piv = -1;
    double best = 1e-9;
    for (int r = rk; r < static_cast<int>(rows.size()); ++r)
      if (std::fabs(rows[r][col]) > best) {
        best = std::fabs(rows[r][col]);
        piv = r;
      }
    if (piv < 0) continue;
    std::swap(rows[rk], rows[piv]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rk) continue;
      double f = rows[r][col] / rows[rk][col];
      for (int j = col; j < dim; ++j) rows[r][j] -= f * rows[rk][j];
    }
    ++rk;
  }
  return rk;
}

}  // namespace detail

inline void NormedSpace::init_polyhedral(std::vector<VecN> pts) {
  if (pts.size() < 2) throw ParseError("polyhedral space needs at least two extreme points");
  dim_ = static_cast<int>(pts.front().size());
  if (dim_ < 2) throw ParseError("space dimension must be at least 2");
  for (const auto& p : pts) {
    if (static_cast<int>(p.size()) != dim_)
      throw ParseError("polyhedral extreme points have inconsistent dimensions");
    if (!all_finite(p)) throw ParseError("polyhedral extreme point has a non-finite coordinate");
  }

  // symmetry: every point must have its antipode in the set
  for (const auto& p : pts) {
    bool found = false;
    for (const auto& q : pts) {
      bool eq = true;
      for (int i = 0; i < dim_; ++i)
        if (std::fabs(p[i] + q[i]) > 1e-12 * (1.0 + std::fabs(p[i]))) {
          eq = false;
          break;
        }
      if (eq) {
        found = true;
        break;
      }
    }
    if (!found) throw ParseError("polyhedral extreme-point set is not origin-symmetric");
  }

  if (detail::rank(pts, dim_) < dim_)
    throw ParseError("polyhedral extreme points do not span the space");

  for (std::size_t k = 0; k < pts.size(); ++k)
    if (detail::in_hull(pts, k, pts[k], dim_))
      throw ParseError("polyhedral point is inside the hull of the others (not extreme)");

  points_ = std::move(pts);

  if (dim_ == 2) {
    // facet functionals from the angular order of the vertices
    std::vector<std::size_t> order(points_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::atan2(points_[a][1], points_[a][0]) < std::atan2(points_[b][1], points_[b][0]);
    });
    for (std::size_t i = 0; i < order.size(); ++i) {
      const VecN& u = points_[order[i]];
      const VecN& w = points_[order[(i + 1) % order.size()]];
      double det = u[0] * w[1] - u[1] * w[0];
      if (std::fabs(det) < 1e-14)
        throw ParseError("degenerate polyhedral facet (adjacent vertices are collinear with 0)");
      facets_.push_back({(w[1] - u[1]) / det, (u[0] - w[0]) / det});
    }
  }
}

inline double NormedSpace::gauge(std::span<const double> v) const {
  if (dim_ == 2) {
    double m = 0.0;
    for (const auto& a : facets_) m = std::max(m, a[0] * v[0] + a[1] * v[1]);
    return m;
  }
  bool zero = true;
  for (double c : v)
    if (c != 0.0) {
      zero = false;
      break;
    }
  if (zero) return 0.0;
  // gauge(v) = min sum(l) s.t. sum l_i p_i = v, l >= 0
  const int n = static_cast<int>(points_.size());
  std::vector<double> A(static_cast<std::size_t>(dim_) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < dim_; ++i) A[static_cast<std::size_t>(i) * n + j] = points_[j][i];
  auto r = detail::solve_lp(dim_, n, std::move(A), VecN(v.begin(), v.end()),
                            std::vector<double>(n, 1.0));
  if (!r.feasible) throw DegenerateInputError("gauge: vector outside the span of the polytope");
  return r.value;
}

inline std::vector<VecN> load_extreme_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open extreme-point file: " + path);
  std::vector<VecN> pts;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    VecN p;
    double c;
    while (ls >> c) p.push_back(c);
    if (!ls.eof()) throw ParseError("bad coordinate in extreme-point file: " + line);
    if (!p.empty()) pts.push_back(std::move(p));
  }
  return pts;
}

inline NormedSpace NormedSpace::from_id(const std::string& id) {
  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
      auto colon = s.find(':', pos);
      if (colon == std::string::npos) {
        parts.push_back(s.substr(pos));
        break;
      }
      parts.push_back(s.substr(pos, colon - pos));
      pos = colon + 1;
    }
    return parts;
  };
  auto parse_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw ParseError("bad integer in space id: " + id);
    }
    if (used != s.size()) throw ParseError("bad integer in space id: " + id);
    return v;
  };

  auto parts = split(id);
  if (parts.empty()) throw ParseError("empty space id");
  const std::string& kind = parts[0];
  if (kind == "dayjames") {
    if (parts.size() != 1) throw ParseError("dayjames takes no parameters: " + id);
    return day_james();
  }
  if (kind == "euclid") {
    if (parts.size() != 2) throw ParseError("expected euclid:<dim>: " + id);
    return euclidean(parse_int(parts[1]));
  }
  if (kind == "lp") {
    if (parts.size() != 3) throw ParseError("expected lp:<p>:<dim>: " + id);
    double p;
    if (parts[1] == "inf") {
      p = inf;
    } else {
      std::size_t used = 0;
      try {
        p = std::stod(parts[1], &used);
      } catch (const std::exception&) {
        throw ParseError("bad exponent in space id: " + id);
      }
      if (used != parts[1].size()) throw ParseError("bad exponent in space id: " + id);
    }
    return lp(p, parse_int(parts[2]));
  }
  if (kind == "poly") {
    if (parts.size() < 2) throw ParseError("expected poly:<file>: " + id);
    std::string path = id.substr(5);  // allow colons in the path
    return polyhedral(id, load_extreme_points(path));
  }
  throw ParseError("unknown space id: " + id);
}

}  // namespace banach
