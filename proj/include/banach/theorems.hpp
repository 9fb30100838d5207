#pragma once

#include <cstdio>
#include <optional>
#include <string>

#include "banach/constants.hpp"

namespace banach::theorems {

using constants::ConstantId;
using search::Estimate;
using search::SearchConfig;

/// Machine-readable verdict for one inequality check. `satisfied` is always
/// recomputable from the stored fields as margin >= -tol; `margin` is the
/// smallest slack across the checked inequalities.
struct TheoremReport {
  std::string theorem_id;
  std::string space_id;
  std::optional<double> kappa, tau, eps;
  std::optional<double> lhs, mid, rhs;
  double margin = 0.0;
  double tol = 0.0;
  bool satisfied = false;
  std::string verdict;
  std::string caveat;
  std::string detail;

  bool recomputed_satisfied() const { return margin >= -tol; }
};

namespace detail {

inline void finish_two_sided(TheoremReport& r) {
  r.margin = std::min(*r.mid - *r.lhs, *r.rhs - *r.mid);
  r.satisfied = r.margin >= -r.tol;
  r.verdict = r.satisfied ? "satisfied" : "violated";
}

inline void finish_upper(TheoremReport& r) {
  r.margin = *r.rhs - *r.mid;
  r.satisfied = r.margin >= -r.tol;
  r.verdict = r.satisfied ? "satisfied" : "violated";
}

inline double safe_tol(double t) { return std::isfinite(t) ? t : std::numeric_limits<double>::infinity(); }

}  // namespace detail

/// sqrt(k^2 + t^2) <= T1(k, t, X) <= k + t.
inline TheoremReport check_t1_bounds(const NormedSpace& space, ParamPair pp,
                                     const SearchConfig& cfg) {
  pp.validate();
  Estimate est = constants::t1_constant(space, pp, cfg);
  TheoremReport r;
  r.theorem_id = "t1-bounds";
  r.space_id = space.id();
  r.kappa = pp.kappa;
  r.tau = pp.tau;
  r.lhs = std::hypot(pp.kappa, pp.tau);
  r.mid = est.value;
  r.rhs = pp.kappa + pp.tau;
  r.tol = detail::safe_tol(est.error_bound + 1e-9);
  if (!std::isfinite(est.error_bound))
    r.caveat = "estimate is a lower bound only (dim > 2); check not certified";
  detail::finish_two_sided(r);
  return r;
}

/// (k ^ t) T(X) <= T1(k, t, X) <= (k v t) T(X).
inline TheoremReport check_t1_t_relation(const NormedSpace& space, ParamPair pp,
                                         const SearchConfig& cfg) {
  pp.validate();
  Estimate t = constants::t_constant(space, cfg);
  Estimate t1 = constants::t1_constant(space, pp, cfg);
  TheoremReport r;
  r.theorem_id = "t1-vs-t";
  r.space_id = space.id();
  r.kappa = pp.kappa;
  r.tau = pp.tau;
  r.lhs = pp.min() * t.value;
  r.mid = t1.value;
  r.rhs = pp.max() * t.value;
  r.tol = detail::safe_tol(pp.max() * t.error_bound + t1.error_bound + 1e-9);
  detail::finish_two_sided(r);
  return r;
}

/// sqrt(k^2 + t^2) <= T2(k, t, X) <= k + t. The lower bound is established
/// for infinite-dimensional spaces; finite-dimensional values are reported
/// against it as expected behaviour, not a guarantee.
inline TheoremReport check_t2_bounds(const NormedSpace& space, ParamPair pp,
                                     const SearchConfig& cfg) {
  pp.validate();
  Estimate est = constants::t2_constant(space, pp, cfg);
  TheoremReport r;
  r.theorem_id = "t2-bounds";
  r.space_id = space.id();
  r.kappa = pp.kappa;
  r.tau = pp.tau;
  r.lhs = std::hypot(pp.kappa, pp.tau);
  r.mid = est.value;
  r.rhs = pp.kappa + pp.tau;
  r.tol = detail::safe_tol(est.error_bound + 1e-9);
  r.caveat = "lower bound proven for infinite-dimensional spaces; "
             "reported as expected at finite dimension";
  if (space.family() == Family::day_james && est.value * est.value > *r.rhs + r.tol) {
    // the quoted product form for this space is not the constant: only the
    // square root of the product is bound by kappa+tau
    auto cat = constants::exact_value(space, ConstantId::T2, pp);
    char buf[220];
    std::snprintf(buf, sizeof buf,
                  "norm-product supremum %.6f exceeds kappa+tau = %.6f; the constant is its "
                  "square root %.6f (catalog %.6f) and is checked against the bound",
                  est.value * est.value, *r.rhs, est.value, cat ? cat->value : est.value);
    r.detail = buf;
  }
  detail::finish_two_sided(r);
  return r;
}

/// Sandwich for T2^2 in terms of the modulus of convexity at a chosen eps.
/// The upper bound does not hold at every (space, eps); it is reported, not
/// asserted.
inline TheoremReport check_t2_delta_bounds(const NormedSpace& space, ParamPair pp, double eps,
                                           const SearchConfig& cfg) {
  pp.validate();
  Estimate del = constants::convexity_modulus(space, eps, cfg);
  Estimate t2 = constants::t2_constant(space, pp, cfg);
  const double a = pp.max(), d = pp.gap();
  const double one_minus = 1.0 - del.value;
  TheoremReport r;
  r.theorem_id = "t2-delta";
  r.space_id = space.id();
  r.kappa = pp.kappa;
  r.tau = pp.tau;
  r.eps = eps;
  r.lhs = 2.0 * a * a * eps * one_minus - a * d * (2.0 * one_minus + eps) + d * d;
  {
    const double i = pp.min();
    r.rhs = 2.0 * i * i * eps * one_minus + i * d * (2.0 * one_minus + eps) + d * d;
  }
  r.mid = t2.value * t2.value;
  r.tol = detail::safe_tol(del.error_bound * (2.0 * a * a * eps + 2.0 * a * d) +
                           2.0 * t2.value * t2.error_bound + 1e-9);
  r.caveat = "upper bound uses the modulus at an arbitrary eps not tied to the maximizing "
             "pair; it can fail and is reported rather than asserted";
  detail::finish_two_sided(r);
  return r;
}

/// T2(k, t, X)^2 <= 2 k^2 C'_NJ + 2 sqrt(2) k |k - t| sqrt(C'_NJ) + (k - t)^2.
inline TheoremReport check_t2_cnj_bound(const NormedSpace& space, ParamPair pp,
                                        const SearchConfig& cfg) {
  pp.validate();
  Estimate cp = constants::cnj_prime_constant(space, cfg);
  Estimate t2 = constants::t2_constant(space, pp, cfg);
  const double k = pp.kappa, d = pp.gap();
  TheoremReport r;
  r.theorem_id = "t2-cnj";
  r.space_id = space.id();
  r.kappa = pp.kappa;
  r.tau = pp.tau;
  r.mid = t2.value * t2.value;
  r.rhs = 2.0 * k * k * cp.value + 2.0 * std::numbers::sqrt2 * k * d * std::sqrt(cp.value) +
          d * d;
  double drhs_dc = 2.0 * k * k +
                   std::numbers::sqrt2 * k * d / std::sqrt(std::max(cp.value, 0.5));
  r.tol = detail::safe_tol(cp.error_bound * drhs_dc + 2.0 * t2.value * t2.error_bound + 1e-9);
  detail::finish_upper(r);
  return r;
}

/// [(k v t) T]^2 - 4 (k v t)|k - t| + (k - t)^2 <= T2^2
///   <= [(k ^ t) T]^2 + 4 (k ^ t)|k - t| + (k - t)^2.
inline TheoremReport check_t2_t_relation(const NormedSpace& space, ParamPair pp,
                                         const SearchConfig& cfg) {
  pp.validate();
  Estimate t = constants::t_constant(space, cfg);
  Estimate t2 = constants::t2_constant(space, pp, cfg);
  const double hi = pp.max(), lo = pp.min(), d = pp.gap();
  TheoremReport r;
  r.theorem_id = "t2-vs-t";
  r.space_id = space.id();
  r.kappa = pp.kappa;
  r.tau = pp.tau;
  r.lhs = hi * t.value * hi * t.value - 4.0 * hi * d + d * d;
  r.mid = t2.value * t2.value;
  r.rhs = lo * t.value * lo * t.value + 4.0 * lo * d + d * d;
  r.tol = detail::safe_tol(2.0 * hi * hi * t.value * t.error_bound +
                           2.0 * t2.value * t2.error_bound + 1e-9);
  detail::finish_two_sided(r);
  return r;
}

enum class Squareness { uns, not_uns, undecided };

inline const char* to_string(Squareness s) {
  switch (s) {
    case Squareness::uns: return "UNS";
    case Squareness::not_uns: return "NOT_UNS";
    case Squareness::undecided: return "UNDECIDED";
  }
  return "?";
}

/// Verdicts from the T criterion (T < 2 iff uniformly non-square) and the
/// cross-check via T2(1,2) = 3 characterizing the squared case.
struct ClassificationReport {
  std::string space_id;
  Squareness verdict = Squareness::undecided;     // from T
  Squareness t2_verdict = Squareness::undecided;  // from T2(1, 2) vs kappa+tau
  double t_value = 0.0, t_error = 0.0;
  double t2_value = 0.0, t2_error = 0.0;
  bool criteria_agree = false;
};

inline ClassificationReport classify_uniform_nonsquareness(const NormedSpace& space,
                                                           const SearchConfig& cfg) {
  ClassificationReport rep;
  rep.space_id = space.id();
  Estimate t = constants::t_constant(space, cfg);
  rep.t_value = t.value;
  rep.t_error = t.error_bound;
  if (t.value + t.error_bound < 2.0)
    rep.verdict = Squareness::uns;
  else if (std::isfinite(t.error_bound) && t.value - t.error_bound >= 2.0 - 1e-6)
    rep.verdict = Squareness::not_uns;

  ParamPair pp{1.0, 2.0};
  Estimate t2 = constants::t2_constant(space, pp, cfg);
  rep.t2_value = t2.value;
  rep.t2_error = t2.error_bound;
  const double sum = pp.kappa + pp.tau;
  if (t2.value + t2.error_bound < sum)
    rep.t2_verdict = Squareness::uns;
  else if (std::isfinite(t2.error_bound) && t2.value - t2.error_bound >= sum - 1e-6)
    rep.t2_verdict = Squareness::not_uns;

  rep.criteria_agree = rep.verdict == rep.t2_verdict ||
                       rep.verdict == Squareness::undecided ||
                       rep.t2_verdict == Squareness::undecided;
  return rep;
}

/// Pure decision step behind certify_normal_structure; certification demands
/// a full error bound of slack under the case threshold, so lowering the
/// estimate can only keep or gain certification.
inline TheoremReport decide_normal_structure(const std::string& space_id, ParamPair pp,
                                             double t2_value, double t2_error) {
  pp.validate();
  const double k = pp.kappa, t = pp.tau;
  TheoremReport r;
  r.theorem_id = "normal-structure";
  r.space_id = space_id;
  r.kappa = k;
  r.tau = t;
  r.mid = t2_value;
  r.tol = 0.0;
  r.caveat = "NOT_CERTIFIED carries no information: the criterion is sufficient only";

  double thr_sq;
  const char* which;
  if (t < k) {
    thr_sq = t * (k + t);
    which = "case (i): 0 < tau < kappa";
  } else if (t < 2.0 * k) {
    thr_sq = t * (3.0 * k - t);
    which = "case (ii): kappa <= tau < 2 kappa";
  } else {
    thr_sq = (4.0 * k - t) * (3.0 * k - t);
    which = "case (iii): tau >= 2 kappa";
    if (thr_sq <= 0.0) {
      r.rhs = 0.0;
      r.margin = -std::numeric_limits<double>::infinity();
      r.satisfied = false;
      r.verdict = "NOT_CERTIFIED";
      r.detail = std::string(which) + "; vacuous condition (nonpositive radicand)";
      return r;
    }
  }
  double thr = std::sqrt(thr_sq);
  r.rhs = thr;
  r.margin = std::isfinite(t2_error) ? thr - t2_value - t2_error
                                     : -std::numeric_limits<double>::infinity();
  r.satisfied = r.margin >= 0.0;
  r.verdict = r.satisfied ? "CERTIFIED" : "NOT_CERTIFIED";
  r.detail = std::string(which);
  return r;
}

/// Sufficient test for normal structure through T2 against a per-case
/// threshold; the three parameter cases partition kappa, tau > 0.
inline TheoremReport certify_normal_structure(const NormedSpace& space, ParamPair pp,
                                              const SearchConfig& cfg) {
  Estimate t2 = constants::t2_constant(space, pp, cfg);
  return decide_normal_structure(space.id(), pp, t2.value, t2.error_bound);
}

/// The sup of the T1 functional over the ball equals the sup over the
/// sphere: sampled over radii {0.25, 0.5, 0.75, 1} x a 256-point angle grid,
/// the ball value must not exceed the sphere estimate.
inline TheoremReport check_ball_sphere_equivalence(const NormedSpace& space, ParamPair pp,
                                                   const SearchConfig& cfg) {
  pp.validate();
  if (space.dim() != 2)
    throw UnsupportedSpaceError("ball-sphere check requires dim == 2");
  Estimate sphere = constants::t1_constant(space, pp, cfg);

  const int na = 256;
  const double radii[] = {0.25, 0.5, 0.75, 1.0};
  double ball_max = 0.0;
  std::vector<std::array<double, 2>> dirs(na);
  for (int i = 0; i < na; ++i) {
    VecN p = space.sphere_point_2d(2.0 * std::numbers::pi * i / na);
    dirs[static_cast<std::size_t>(i)] = {p[0], p[1]};
  }
  for (double r1 : radii)
    for (const auto& dx : dirs)
      for (double r2 : radii)
        for (const auto& dy : dirs) {
          std::array<double, 2> x{r1 * dx[0], r1 * dx[1]}, y{r2 * dy[0], r2 * dy[1]};
          double v = constants::comb_norm(space, pp.kappa, x, pp.tau, y) *
                     constants::comb_norm(space, pp.kappa, x, -pp.tau, y);
          ball_max = std::max(ball_max, v);
        }
  ball_max = std::sqrt(ball_max);

  TheoremReport r;
  r.theorem_id = "ball-sphere";
  r.space_id = space.id();
  r.kappa = pp.kappa;
  r.tau = pp.tau;
  r.lhs = ball_max;
  r.rhs = sphere.value;
  r.tol = detail::safe_tol(sphere.error_bound + 1e-9);
  r.margin = *r.rhs - *r.lhs;
  r.satisfied = r.margin >= -r.tol;
  r.verdict = r.satisfied ? "satisfied" : "violated";
  return r;
}

inline const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids = {
      "t1-bounds", "t1-vs-t", "t2-bounds", "t2-delta", "t2-cnj",
      "t2-vs-t",   "uns",     "normal-structure", "ball-sphere"};
  return ids;
}

}  // namespace banach::theorems
