#pragma once

#include <array>
#include <atomic>
#include <cfloat>
#include <cmath>
#include <cstdlib>
#include <thread>
#include <vector>

#include "banach/rng.hpp"
#include "banach/spaces.hpp"

namespace banach::search {

/// Knobs for the global searches. `coarse_grid` is the number of grid points
/// per full angular axis; the symmetry reduction keeps the spacing and halves
/// the theta1 range. `target_tol` is the accuracy the caller asked for; the
/// estimate records whether it was met.
struct SearchConfig {
  int coarse_grid = 2048;
  int refine_rounds = 40;
  double shrink = 0.5;
  int multistart = 64;  // used only for dim > 2
  std::uint64_t seed = 0;
  double target_tol = 1e-4;
  bool use_symmetry = true;

  void validate() const {
    if (coarse_grid < 8) throw DomainError("coarse_grid must be at least 8");
    if (refine_rounds < 1) throw DomainError("refine_rounds must be at least 1");
    if (!(shrink > 0.0 && shrink < 1.0)) throw DomainError("shrink must lie in (0,1)");
    if (multistart < 1) throw DomainError("multistart must be at least 1");
    if (!(target_tol > 0.0)) throw DomainError("target_tol must be positive");
  }
};

enum class Method { grid2d, multistart };

inline const char* to_string(Method m) { return m == Method::grid2d ? "grid2d" : "multistart"; }

/// Result of a sup/inf search. `error_bound` claims |true - value| under the
/// sampled-Lipschitz model (dim = 2 only); multistart results are lower
/// bounds and carry an infinite bound. Witness vectors are unit; `scale` is
/// the radial factor applied to the second witness (1 except for searches
/// over a ball slice).
struct Estimate {
  double value = 0.0;
  VecN witness_x, witness_y;
  double scale = 1.0;
  std::uint64_t evaluations = 0;
  double error_bound = 0.0;
  Method method = Method::grid2d;
  bool tolerance_met = false;
};

namespace detail {

inline int thread_count() {
  static const int n = [] {
    if (const char* env = std::getenv("BANACH_THREADS")) {
      int v = std::atoi(env);
      if (v >= 1) return std::min(v, 64);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(std::min(hc, 16u)) : 1;
  }();
  return n;
}

/// Runs fn(block) for block = 0..nblocks-1 on a small pool. The partition is
/// fixed by nblocks alone, so results merged in block order do not depend on
/// the number of workers.
template <class Fn>
void run_blocks(int nblocks, Fn&& fn) {
  int nt = std::min(thread_count(), nblocks);
  std::vector<std::exception_ptr> errs(static_cast<std::size_t>(nblocks));
  if (nt <= 1) {
    for (int b = 0; b < nblocks; ++b) {
      try {
        fn(b);
      } catch (...) {
        errs[b] = std::current_exception();
      }
    }
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t)
      pool.emplace_back([&] {
        for (int b = next.fetch_add(1); b < nblocks; b = next.fetch_add(1)) {
          try {
            fn(b);
          } catch (...) {
            errs[b] = std::current_exception();
          }
        }
      });
    for (auto& th : pool) th.join();
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

struct Incumbent {
  double value = 0.0;
  double th1 = 0.0, th2 = 0.0, t = 1.0;
  std::array<double, 2> x{}, y{};
  bool valid = false;

  // strictly-better-only updates keep the first optimum in scan order
  void offer_max(double v, double a, double b, double tt, const double* px, const double* py) {
    if (!valid || v > value) {
      value = v;
      th1 = a;
      th2 = b;
      t = tt;
      x = {px[0], px[1]};
      y = {py[0], py[1]};
      valid = true;
    }
  }
  void offer_min(double v, double a, double b, const double* px, const double* py) {
    if (!valid || v < value) {
      value = v;
      th1 = a;
      th2 = b;
      x = {px[0], px[1]};
      y = {py[0], py[1]};
      valid = true;
    }
  }
};

inline void merge_max(Incumbent& into, const Incumbent& from) {
  if (from.valid && (!into.valid || from.value > into.value)) into = from;
}
inline void merge_min(Incumbent& into, const Incumbent& from) {
  if (from.valid && (!into.valid || from.value < into.value)) into = from;
}

struct SphereGrid {
  std::vector<std::array<double, 2>> pts;
  std::vector<double> thetas;
  double h = 0.0;

  SphereGrid(const NormedSpace& space, int n) {
    h = 2.0 * std::numbers::pi / n;
    pts.resize(static_cast<std::size_t>(n));
    thetas.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      double th = k * h;
      VecN p = space.sphere_point_2d(th);
      pts[static_cast<std::size_t>(k)] = {p[0], p[1]};
      thetas[static_cast<std::size_t>(k)] = th;
    }
  }
};

[[noreturn]] inline void throw_nonfinite(std::array<double, 2> x, std::array<double, 2> y) {
  throw ObjectiveError("objective returned a non-finite value", VecN{x[0], x[1]},
                       VecN{y[0], y[1]});
}

/// Every functional searched here is built from norms of linear combinations,
/// hence even: f(-x,-y) = f(x,y). That symmetry lets theta1 range over half
/// the circle. Verified at runtime on a few seeded pairs; on failure the
/// engine silently falls back to the full range.
template <class F>
bool central_symmetry_holds(const NormedSpace& space, F&& f, std::uint64_t seed,
                            std::uint64_t& evals) {
  Rng rng(mix_seed(seed, 0x53504f54ull));
  for (int k = 0; k < 8; ++k) {
    VecN x = space.sphere_point_2d(rng.uniform(0.0, 2.0 * std::numbers::pi));
    VecN y = space.sphere_point_2d(rng.uniform(0.0, 2.0 * std::numbers::pi));
    VecN mx = scaled(x, -1.0), my = scaled(y, -1.0);
    double a = f(std::span<const double>(x), std::span<const double>(y));
    double b = f(std::span<const double>(mx), std::span<const double>(my));
    evals += 2;
    if (!std::isfinite(a) || !std::isfinite(b)) throw ObjectiveError("objective returned a non-finite value", x, y);
    if (std::fabs(a - b) > 1e-9 * (1.0 + std::fabs(a))) return false;
  }
  return true;
}

constexpr double kWindowFloor = 1e-10;
constexpr int kRefineHalf = 4;  // 9 local points per axis

inline double noise_floor(double value) { return 32.0 * DBL_EPSILON * (1.0 + std::fabs(value)); }

/// Deterministic pattern-search used for dim > 2 (lower bounds only).
template <class F>
Estimate multistart_pair(const NormedSpace& space, F&& f, const SearchConfig& cfg) {
  const int dim = space.dim();
  Estimate best;
  std::uint64_t evals = 0;
  for (int s = 0; s < cfg.multistart; ++s) {
    Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(s)));
    VecN x, y;
    try {
      x = space.normalize(rng.normal_vec(dim));
      y = space.normalize(rng.normal_vec(dim));
    } catch (const DegenerateInputError&) {
      continue;
    }
    double v = f(std::span<const double>(x), std::span<const double>(y));
    ++evals;
    if (!std::isfinite(v)) throw ObjectiveError("objective returned a non-finite value", x, y);
    double step = 0.5;
    int iters = 0;
    while (step > 1e-9 && iters < 20000) {
      bool improved = false;
      for (int which = 0; which < 2; ++which) {
        VecN& target = which == 0 ? x : y;
        for (int c = 0; c < dim; ++c) {
          for (double d : {step, -step}) {
            VecN cand = target;
            cand[static_cast<std::size_t>(c)] += d;
            double nn = space.norm(cand);
            if (nn < 1e-12) continue;
            for (double& cc : cand) cc /= nn;
            double vv = which == 0
                            ? f(std::span<const double>(cand), std::span<const double>(y))
                            : f(std::span<const double>(x), std::span<const double>(cand));
            ++evals;
            ++iters;
            if (!std::isfinite(vv)) throw ObjectiveError("objective returned a non-finite value", x, y);
            if (vv > v) {
              v = vv;
              target = cand;
              improved = true;
            }
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    if (s == 0 || v > best.value) {
      best.value = v;
      best.witness_x = x;
      best.witness_y = y;
    }
  }
  best.evaluations = evals;
  best.error_bound = std::numeric_limits<double>::infinity();
  best.method = Method::multistart;
  best.tolerance_met = false;
  return best;
}

}  // namespace detail

/// Supremum of f over S(X) x S(X). For dim = 2 this is an exhaustive coarse
/// grid over the angle parametrization followed by shrinking local
/// refinement; the error bound is (estimated Lipschitz constant) x (final
/// window) x 1.5 plus a floating-point noise allowance, and assumes the
/// coarse grid localized the optimum's basin (guarded by the acceptance
/// honesty checks). For dim > 2 a seeded multistart reports a lower bound
/// with an infinite error bound.
template <class F>
Estimate maximize_pairwise(const NormedSpace& space, F&& f, const SearchConfig& cfg) {
  cfg.validate();
  if (space.dim() != 2) return detail::multistart_pair(space, f, cfg);

  const int n = cfg.coarse_grid;
  std::uint64_t evals = 0;
  bool reduced = cfg.use_symmetry && n % 2 == 0 &&
                 detail::central_symmetry_holds(space, f, cfg.seed, evals);
  const int m = reduced ? n / 2 : n;

  detail::SphereGrid grid(space, n);
  const auto& pts = grid.pts;
  const double h = grid.h;

  const int nblocks = std::min(m, 64);
  std::vector<detail::Incumbent> bests(static_cast<std::size_t>(nblocks));
  std::vector<double> l1s(static_cast<std::size_t>(nblocks), 0.0);
  std::vector<double> l2s(static_cast<std::size_t>(nblocks), 0.0);

  detail::run_blocks(nblocks, [&](int b) {
    int r0 = static_cast<int>(static_cast<long long>(b) * m / nblocks);
    int r1 = static_cast<int>(static_cast<long long>(b + 1) * m / nblocks);
    detail::Incumbent inc;
    double l1 = 0.0, l2 = 0.0;
    std::vector<double> prev_row, row(static_cast<std::size_t>(n));
    for (int i = r0; i < r1; ++i) {
      const auto& x = pts[static_cast<std::size_t>(i)];
      for (int j = 0; j < n; ++j) {
        const auto& y = pts[static_cast<std::size_t>(j)];
        double v = f(std::span<const double>(x), std::span<const double>(y));
        if (!std::isfinite(v)) detail::throw_nonfinite(x, y);
        row[static_cast<std::size_t>(j)] = v;
        inc.offer_max(v, grid.thetas[static_cast<std::size_t>(i)],
                      grid.thetas[static_cast<std::size_t>(j)], 1.0, x.data(), y.data());
        if (j > 0) l2 = std::max(l2, std::fabs(v - row[static_cast<std::size_t>(j - 1)]) / h);
        if (!prev_row.empty())
          l1 = std::max(l1, std::fabs(v - prev_row[static_cast<std::size_t>(j)]) / h);
      }
      std::swap(prev_row, row);
      row.resize(static_cast<std::size_t>(n));
    }
    bests[static_cast<std::size_t>(b)] = inc;
    l1s[static_cast<std::size_t>(b)] = l1;
    l2s[static_cast<std::size_t>(b)] = l2;
  });
  evals += static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(n);

  detail::Incumbent best;
  double l1 = 0.0, l2 = 0.0;
  for (int b = 0; b < nblocks; ++b) {
    detail::merge_max(best, bests[static_cast<std::size_t>(b)]);
    l1 = std::max(l1, l1s[static_cast<std::size_t>(b)]);
    l2 = std::max(l2, l2s[static_cast<std::size_t>(b)]);
  }

  // local refinement around the incumbent
  double w1 = h, w2 = h;
  double w1_used = w1, w2_used = w2;
  for (int round = 0; round < cfg.refine_rounds; ++round) {
    w1_used = w1;
    w2_used = w2;
    bool improved = false;
    const double c1 = best.th1, c2 = best.th2;
    for (int di = -detail::kRefineHalf; di <= detail::kRefineHalf; ++di) {
      for (int dj = -detail::kRefineHalf; dj <= detail::kRefineHalf; ++dj) {
        if (di == 0 && dj == 0) continue;
        double t1 = c1 + di * (w1 / detail::kRefineHalf);
        double t2 = c2 + dj * (w2 / detail::kRefineHalf);
        VecN x = space.sphere_point_2d(t1);
        VecN y = space.sphere_point_2d(t2);
        double v = f(std::span<const double>(x), std::span<const double>(y));
        ++evals;
        if (!std::isfinite(v)) throw ObjectiveError("objective returned a non-finite value", x, y);
        if (v > best.value) {
          best.offer_max(v, t1, t2, 1.0, x.data(), y.data());
          improved = true;
        }
      }
    }
    bool floored = w1 <= detail::kWindowFloor && w2 <= detail::kWindowFloor;
    w1 = std::max(w1 * cfg.shrink, detail::kWindowFloor);
    w2 = std::max(w2 * cfg.shrink, detail::kWindowFloor);
    if (floored && !improved) break;
  }

  Estimate est;
  est.value = best.value;
  est.witness_x = {best.x[0], best.x[1]};
  est.witness_y = {best.y[0], best.y[1]};
  est.evaluations = evals;
  est.error_bound = 1.5 * (l1 * w1_used + l2 * w2_used) + detail::noise_floor(best.value);
  est.method = Method::grid2d;
  est.tolerance_met = est.error_bound <= cfg.target_tol;
  return est;
}

/// Supremum of g(x, y, t) over S(X) x S(X) x [t_lo, t_hi]; the scalar axis
/// gets `t_points` coarse samples and refines with the angles. Used for the
/// ball-slice searches where the second argument carries radius t.
template <class F>
Estimate maximize_pairwise_scaled(const NormedSpace& space, F&& g, double t_lo, double t_hi,
                                  int t_points, const SearchConfig& cfg) {
  cfg.validate();
  if (t_points < 2 || !(t_hi > t_lo)) throw DomainError("bad scalar axis for scaled search");
  if (space.dim() != 2) {
    // fold the scalar axis into the pattern-search objective
    Estimate e = detail::multistart_pair(
        space,
        [&](std::span<const double> x, std::span<const double> y) {
          double best = -std::numeric_limits<double>::infinity();
          for (int k = 0; k < t_points; ++k) {
            double t = t_lo + (t_hi - t_lo) * k / (t_points - 1);
            best = std::max(best, g(x, y, t));
          }
          return best;
        },
        cfg);
    double best_t = t_lo, best_v = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < t_points; ++k) {
      double t = t_lo + (t_hi - t_lo) * k / (t_points - 1);
      double v = g(e.witness_x, e.witness_y, t);
      if (v > best_v) {
        best_v = v;
        best_t = t;
      }
    }
    e.scale = best_t;
    e.evaluations += static_cast<std::uint64_t>(t_points);
    return e;
  }

  const int n = cfg.coarse_grid;
  std::uint64_t evals = 0;
  auto f_at_one = [&](std::span<const double> x, std::span<const double> y) {
    return g(x, y, t_hi);
  };
  bool reduced = cfg.use_symmetry && n % 2 == 0 &&
                 detail::central_symmetry_holds(space, f_at_one, cfg.seed, evals);
  const int m = reduced ? n / 2 : n;

  detail::SphereGrid grid(space, n);
  const auto& pts = grid.pts;
  const double h = grid.h;
  const double ht = (t_hi - t_lo) / (t_points - 1);

  const int nblocks = std::min(m, 64);
  std::vector<detail::Incumbent> bests(static_cast<std::size_t>(nblocks));
  std::vector<std::array<double, 3>> ls(static_cast<std::size_t>(nblocks), {0.0, 0.0, 0.0});

  detail::run_blocks(nblocks, [&](int b) {
    int r0 = static_cast<int>(static_cast<long long>(b) * m / nblocks);
    int r1 = static_cast<int>(static_cast<long long>(b + 1) * m / nblocks);
    detail::Incumbent inc;
    std::array<double, 3> l{0.0, 0.0, 0.0};
    std::vector<double> prev_plane, plane(static_cast<std::size_t>(n) * t_points);
    for (int i = r0; i < r1; ++i) {
      const auto& x = pts[static_cast<std::size_t>(i)];
      for (int j = 0; j < n; ++j) {
        const auto& y = pts[static_cast<std::size_t>(j)];
        for (int k = 0; k < t_points; ++k) {
          double t = t_lo + ht * k;
          double v = g(std::span<const double>(x), std::span<const double>(y), t);
          if (!std::isfinite(v)) detail::throw_nonfinite(x, y);
          std::size_t idx = static_cast<std::size_t>(j) * t_points + k;
          plane[idx] = v;
          inc.offer_max(v, grid.thetas[static_cast<std::size_t>(i)],
                        grid.thetas[static_cast<std::size_t>(j)], t, x.data(), y.data());
          if (k > 0) l[2] = std::max(l[2], std::fabs(v - plane[idx - 1]) / ht);
          if (j > 0)
            l[1] = std::max(l[1], std::fabs(v - plane[idx - static_cast<std::size_t>(t_points)]) / h);
          if (!prev_plane.empty()) l[0] = std::max(l[0], std::fabs(v - prev_plane[idx]) / h);
        }
      }
      std::swap(prev_plane, plane);
      plane.resize(static_cast<std::size_t>(n) * t_points);
    }
    bests[static_cast<std::size_t>(b)] = inc;
    ls[static_cast<std::size_t>(b)] = l;
  });
  evals += static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(n) *
           static_cast<std::uint64_t>(t_points);

  detail::Incumbent best;
  std::array<double, 3> l{0.0, 0.0, 0.0};
  for (int b = 0; b < nblocks; ++b) {
    detail::merge_max(best, bests[static_cast<std::size_t>(b)]);
    for (int a = 0; a < 3; ++a) l[static_cast<std::size_t>(a)] =
        std::max(l[static_cast<std::size_t>(a)], ls[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)]);
  }

  double w1 = h, w2 = h, wt = ht;
  double w1_used = w1, w2_used = w2, wt_used = wt;
  constexpr int R = 2;  // 5 local points per axis
  for (int round = 0; round < cfg.refine_rounds; ++round) {
    w1_used = w1;
    w2_used = w2;
    wt_used = wt;
    bool improved = false;
    const double c1 = best.th1, c2 = best.th2, ct = best.t;
    for (int di = -R; di <= R; ++di)
      for (int dj = -R; dj <= R; ++dj)
        for (int dk = -R; dk <= R; ++dk) {
          if (di == 0 && dj == 0 && dk == 0) continue;
          double t1 = c1 + di * (w1 / R);
          double t2 = c2 + dj * (w2 / R);
          double t = std::clamp(ct + dk * (wt / R), t_lo, t_hi);
          VecN x = space.sphere_point_2d(t1);
          VecN y = space.sphere_point_2d(t2);
          double v = g(std::span<const double>(x), std::span<const double>(y), t);
          ++evals;
          if (!std::isfinite(v))
            throw ObjectiveError("objective returned a non-finite value", x, y);
          if (v > best.value) {
            best.offer_max(v, t1, t2, t, x.data(), y.data());
            improved = true;
          }
        }
    bool floored =
        w1 <= detail::kWindowFloor && w2 <= detail::kWindowFloor && wt <= detail::kWindowFloor;
    w1 = std::max(w1 * cfg.shrink, detail::kWindowFloor);
    w2 = std::max(w2 * cfg.shrink, detail::kWindowFloor);
    wt = std::max(wt * cfg.shrink, detail::kWindowFloor);
    if (floored && !improved) break;
  }

  Estimate est;
  est.value = best.value;
  est.witness_x = {best.x[0], best.x[1]};
  est.witness_y = {best.y[0], best.y[1]};
  est.scale = best.t;
  est.evaluations = evals;
  est.error_bound = 1.5 * (l[0] * w1_used + l[1] * w2_used + l[2] * wt_used) +
                    detail::noise_floor(best.value);
  est.method = Method::grid2d;
  est.tolerance_met = est.error_bound <= cfg.target_tol;
  return est;
}

/// Infimum of `obj` over pairs on S(X) x S(X) with ||x - y|| >= eps (dim = 2
/// only). Grid points violating the constraint are skipped; in addition the
/// constraint boundary is located by bisection in theta2 along every grid row
/// and those boundary points enter as candidates, since constrained minima
/// sit there.
template <class F>
Estimate minimize_constrained_pair(const NormedSpace& space, F&& obj, double eps,
                                   const SearchConfig& cfg) {
  cfg.validate();
  if (space.dim() != 2)
    throw UnsupportedSpaceError("minimize_constrained_pair requires dim == 2");
  if (eps < 0.0 || !std::isfinite(eps)) throw DomainError("constraint level must be in [0, 2]");
  if (eps > 2.0)
    throw InfeasibleError("no unit pair satisfies ||x - y|| >= " + std::to_string(eps));

  const int n = cfg.coarse_grid;
  // Machine-scale slack only: a loose tolerance would admit points whose
  // objective undercuts the true constrained infimum by sqrt(slack) where
  // the boundary is tangential (the eps = 2 antipodal case).
  const double feas_tol = 64.0 * DBL_EPSILON * (1.0 + eps);
  std::uint64_t evals = 0;

  auto gap = [&](std::span<const double> x, std::span<const double> y) {
    std::array<double, 2> d{x[0] - y[0], x[1] - y[1]};
    return space.norm(d);
  };
  auto feasible = [&](double g) { return g >= eps - feas_tol; };

  bool reduced = cfg.use_symmetry && n % 2 == 0 &&
                 detail::central_symmetry_holds(space, obj, cfg.seed, evals);
  const int m = reduced ? n / 2 : n;

  detail::SphereGrid grid(space, n);
  const auto& pts = grid.pts;
  const double h = grid.h;

  // Objective at the feasible end of a constraint level crossing, found by
  // bisection on the exact level g = eps (the feasibility tolerance is only
  // applied when accepting the final point; bisecting on the shifted level
  // would park candidates just inside the relaxation).
  auto boundary_candidate = [&](double th1, const std::array<double, 2>& x, double lo, double hi,
                                double glo, detail::Incumbent& inc, std::uint64_t& local_evals) {
    bool lo_below = glo < eps;
    for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
      double mid = 0.5 * (lo + hi);
      VecN ym = space.sphere_point_2d(mid);
      double gm = gap(x, ym);
      if ((gm < eps) == lo_below)
        lo = mid;
      else
        hi = mid;
    }
    double th2 = lo_below ? hi : lo;  // the side at or above the level
    VecN y = space.sphere_point_2d(th2);
    if (!feasible(gap(x, y))) return;
    double v = obj(std::span<const double>(x), std::span<const double>(y));
    ++local_evals;
    if (!std::isfinite(v)) throw ObjectiveError("objective returned a non-finite value",
                                                VecN{x[0], x[1]}, y);
    inc.offer_min(v, th1, th2, x.data(), y.data());
  };

  const int nblocks = std::min(m, 64);
  std::vector<detail::Incumbent> bests(static_cast<std::size_t>(nblocks));
  std::vector<double> l1s(static_cast<std::size_t>(nblocks), 0.0);
  std::vector<double> l2s(static_cast<std::size_t>(nblocks), 0.0);
  std::vector<std::uint64_t> blk_evals(static_cast<std::size_t>(nblocks), 0);

  detail::run_blocks(nblocks, [&](int b) {
    int r0 = static_cast<int>(static_cast<long long>(b) * m / nblocks);
    int r1 = static_cast<int>(static_cast<long long>(b + 1) * m / nblocks);
    detail::Incumbent inc;
    double l1 = 0.0, l2 = 0.0;
    std::uint64_t le = 0;
    std::vector<double> prev_row, row(static_cast<std::size_t>(n),
                                      std::numeric_limits<double>::quiet_NaN());
    std::vector<double> gaps(static_cast<std::size_t>(n));
    for (int i = r0; i < r1; ++i) {
      const auto& x = pts[static_cast<std::size_t>(i)];
      double th1 = grid.thetas[static_cast<std::size_t>(i)];
      for (int j = 0; j < n; ++j) {
        const auto& y = pts[static_cast<std::size_t>(j)];
        double g = gaps[static_cast<std::size_t>(j)] = gap(x, y);
        double v = std::numeric_limits<double>::quiet_NaN();
        if (feasible(g)) {
          v = obj(std::span<const double>(x), std::span<const double>(y));
          ++le;
          if (!std::isfinite(v)) detail::throw_nonfinite(x, y);
          inc.offer_min(v, th1, grid.thetas[static_cast<std::size_t>(j)], x.data(), y.data());
          if (j > 0 && !std::isnan(row[static_cast<std::size_t>(j - 1)]))
            l2 = std::max(l2, std::fabs(v - row[static_cast<std::size_t>(j - 1)]) / h);
          if (!prev_row.empty() && !std::isnan(prev_row[static_cast<std::size_t>(j)]))
            l1 = std::max(l1, std::fabs(v - prev_row[static_cast<std::size_t>(j)]) / h);
        }
        row[static_cast<std::size_t>(j)] = v;
      }
      // boundary bisection between adjacent grid angles (wrapping)
      for (int j = 0; j < n; ++j) {
        int jp = j == 0 ? n - 1 : j - 1;
        double glo = gaps[static_cast<std::size_t>(jp)], ghi = gaps[static_cast<std::size_t>(j)];
        if ((glo < eps) != (ghi < eps)) {
          double lo = grid.thetas[static_cast<std::size_t>(jp)];
          double hi = j == 0 ? 2.0 * std::numbers::pi : grid.thetas[static_cast<std::size_t>(j)];
          boundary_candidate(th1, x, lo, hi, glo, inc, le);
        }
      }
      // the exact antipode is always a boundary candidate; at eps = 2 it is
      // the whole constraint set and no sign change leads to it
      {
        std::array<double, 2> anti{-x[0], -x[1]};
        if (feasible(gap(x, anti))) {
          double v = obj(std::span<const double>(x), std::span<const double>(anti));
          ++le;
          if (!std::isfinite(v)) detail::throw_nonfinite(x, anti);
          inc.offer_min(v, th1, th1 + std::numbers::pi, x.data(), anti.data());
        }
      }
      std::swap(prev_row, row);
      row.assign(static_cast<std::size_t>(n), std::numeric_limits<double>::quiet_NaN());
    }
    bests[static_cast<std::size_t>(b)] = inc;
    l1s[static_cast<std::size_t>(b)] = l1;
    l2s[static_cast<std::size_t>(b)] = l2;
    blk_evals[static_cast<std::size_t>(b)] = le;
  });

  detail::Incumbent best;
  double l1 = 0.0, l2 = 0.0;
  for (int b = 0; b < nblocks; ++b) {
    detail::merge_min(best, bests[static_cast<std::size_t>(b)]);
    l1 = std::max(l1, l1s[static_cast<std::size_t>(b)]);
    l2 = std::max(l2, l2s[static_cast<std::size_t>(b)]);
    evals += blk_evals[static_cast<std::size_t>(b)];
  }
  if (!best.valid)
    throw InfeasibleError("constraint set empty on the search grid");  // unreachable for eps <= 2

  double w1 = h, w2 = h;
  double w1_used = w1, w2_used = w2;
  for (int round = 0; round < cfg.refine_rounds; ++round) {
    w1_used = w1;
    w2_used = w2;
    bool improved = false;
    const double c1 = best.th1, c2 = best.th2;
    for (int di = -detail::kRefineHalf; di <= detail::kRefineHalf; ++di) {
      double t1 = c1 + di * (w1 / detail::kRefineHalf);
      VecN xv = space.sphere_point_2d(t1);
      std::array<double, 2> x{xv[0], xv[1]};
      double prev_th2 = 0.0, prev_gap = 0.0;
      for (int dj = -detail::kRefineHalf; dj <= detail::kRefineHalf; ++dj) {
        double t2 = c2 + dj * (w2 / detail::kRefineHalf);
        VecN y = space.sphere_point_2d(t2);
        double g = gap(x, y);
        if (feasible(g) && !(di == 0 && dj == 0)) {
          double v = obj(std::span<const double>(x), std::span<const double>(y));
          ++evals;
          if (!std::isfinite(v)) detail::throw_nonfinite(x, {y[0], y[1]});
          if (v < best.value) {
            best.offer_min(v, t1, t2, x.data(), y.data());
            improved = true;
          }
        }
        if (dj > -detail::kRefineHalf && (prev_gap < eps) != (g < eps)) {
          detail::Incumbent cand;
          boundary_candidate(t1, x, prev_th2, t2, prev_gap, cand, evals);
          if (cand.valid && cand.value < best.value) {
            detail::merge_min(best, cand);
            improved = true;
          }
        }
        prev_th2 = t2;
        prev_gap = g;
      }
    }
    bool floored = w1 <= detail::kWindowFloor && w2 <= detail::kWindowFloor;
    w1 = std::max(w1 * cfg.shrink, detail::kWindowFloor);
    w2 = std::max(w2 * cfg.shrink, detail::kWindowFloor);
    if (floored && !improved) break;
  }

  Estimate est;
  est.value = best.value;
  est.witness_x = {best.x[0], best.x[1]};
  est.witness_y = {best.y[0], best.y[1]};
  est.evaluations = evals;
  // The feasibility slack admits points whose objective undercuts the exact
  // constrained infimum: by O(feas_tol) across transversal boundaries and by
  // O(sqrt(feas_tol)) where the boundary is tangential (eps at the maximum
  // of the gap). The sqrt term covers both.
  est.error_bound = 1.5 * (l1 * w1_used + l2 * w2_used) + detail::noise_floor(best.value) +
                    4.0 * std::sqrt(feas_tol);
  est.method = Method::grid2d;
  est.tolerance_met = est.error_bound <= cfg.target_tol;
  return est;
}

}  // namespace banach::search
