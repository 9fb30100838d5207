#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace banach::detail {

/// Result of a small dense LP solve.
struct LpResult {
  bool feasible = false;
  double value = 0.0;
  std::vector<double> x;
};

/// Two-phase primal simplex with Bland's rule for
///     min c.x   s.t.   A x = b,  x >= 0.
/// Sized for gauge evaluations: m = ambient dimension, n = number of
/// extreme points. Bland's rule guarantees termination on degenerate bases.
inline LpResult solve_lp(int m, int n, std::vector<double> A /*m*n row major*/,
                         std::vector<double> b, const std::vector<double>& c) {
  constexpr double kPivEps = 1e-11;
  const int cols = n + m;  // artificials occupy columns n..n+m-1

  for (int i = 0; i < m; ++i) {
    if (b[i] < 0.0) {
      b[i] = -b[i];
      for (int j = 0; j < n; ++j) A[i * n + j] = -A[i * n + j];
    }
  }

  // tableau rows: [original columns | artificial columns | rhs]
  std::vector<double> T(static_cast<std::size_t>(m) * (cols + 1), 0.0);
  auto at = [&](int i, int j) -> double& { return T[static_cast<std::size_t>(i) * (cols + 1) + j]; };
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) at(i, j) = A[i * n + j];
    at(i, n + i) = 1.0;
    at(i, cols) = b[i];
    basis[i] = n + i;
  }

  auto pivot = [&](int pr, int pc) {
    double piv = at(pr, pc);
    for (int j = 0; j <= cols; ++j) at(pr, j) /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == pr) continue;
      double f = at(i, pc);
      if (f == 0.0) continue;
      for (int j = 0; j <= cols; ++j) at(i, j) -= f * at(pr, j);
    }
    basis[pr] = pc;
  };

  // cost(j) for the current phase; artificials barred from re-entering in phase 2
  auto run_phase = [&](auto cost, bool allow_artificial) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < cols; ++j) {
        if (!allow_artificial && j >= n) continue;
        bool basic = false;
        for (int i = 0; i < m; ++i)
          if (basis[i] == j) { basic = true; break; }
        if (basic) continue;
        double reduced = cost(j);
        for (int i = 0; i < m; ++i) reduced -= cost(basis[i]) * at(i, j);
        if (reduced < -kPivEps) { enter = j; break; }  // Bland: first eligible index
      }
      if (enter < 0) return;
      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        double a = at(i, enter);
        if (a > kPivEps) {
          double ratio = at(i, cols) / a;
          if (ratio < best_ratio - kPivEps ||
              (ratio < best_ratio + kPivEps && (leave < 0 || basis[i] < basis[leave]))) {
            best_ratio = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return;  // unbounded; caller inspects value
      pivot(leave, enter);
    }
  };

  run_phase([&](int j) { return j >= n ? 1.0 : 0.0; }, true);

  double artificial_sum = 0.0;
  for (int i = 0; i < m; ++i)
    if (basis[i] >= n) artificial_sum += at(i, cols);
  if (artificial_sum > 1e-9) return {};  // infeasible

  // Drive residual artificials (basic at zero) out of the basis when possible.
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    int repl = -1;
    for (int j = 0; j < n; ++j)
      if (std::fabs(at(i, j)) > kPivEps) { repl = j; break; }
    if (repl >= 0) pivot(i, repl);
    // else: redundant row, harmless to leave in place
  }

  run_phase([&](int j) { return j < n ? c[j] : 0.0; }, false);

  LpResult res;
  res.feasible = true;
  res.x.assign(n, 0.0);
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) res.x[basis[i]] = at(i, cols);
  res.value = 0.0;
  for (int j = 0; j < n; ++j) res.value += c[j] * res.x[j];
  return res;
}

}  // namespace banach::detail
