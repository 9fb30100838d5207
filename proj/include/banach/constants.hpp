#pragma once

#include <optional>
#include <string>

#include "banach/search.hpp"

namespace banach::constants {

using search::Estimate;
using search::SearchConfig;

enum class ConstantId { T, T1, T2, J, CNJ, CNJ_PRIME, A2, A_KT, DELTA };

inline const char* to_string(ConstantId id) {
  switch (id) {
    case ConstantId::T: return "T";
    case ConstantId::T1: return "T1";
    case ConstantId::T2: return "T2";
    case ConstantId::J: return "J";
    case ConstantId::CNJ: return "CNJ";
    case ConstantId::CNJ_PRIME: return "CNJp";
    case ConstantId::A2: return "A2";
    case ConstantId::A_KT: return "Akt";
    case ConstantId::DELTA: return "delta";
  }
  return "?";
}

inline ConstantId constant_from_string(const std::string& s) {
  if (s == "T") return ConstantId::T;
  if (s == "T1") return ConstantId::T1;
  if (s == "T2") return ConstantId::T2;
  if (s == "J") return ConstantId::J;
  if (s == "CNJ") return ConstantId::CNJ;
  if (s == "CNJp") return ConstantId::CNJ_PRIME;
  if (s == "A2") return ConstantId::A2;
  if (s == "Akt") return ConstantId::A_KT;
  if (s == "delta") return ConstantId::DELTA;
  throw ParseError("unknown constant id: " + s +
                   " (expected T, T1, T2, J, CNJ, CNJp, A2, Akt or delta)");
}

inline bool uses_params(ConstantId id) {
  return id == ConstantId::T1 || id == ConstantId::T2 || id == ConstantId::A_KT;
}
inline bool uses_eps(ConstantId id) { return id == ConstantId::DELTA; }

/// ||a x + b y|| without heap traffic in the 2-D hot path.
inline double comb_norm(const NormedSpace& s, double a, std::span<const double> x, double b,
                        std::span<const double> y) {
  if (x.size() == 2) {
    std::array<double, 2> buf{a * x[0] + b * y[0], a * x[1] + b * y[1]};
    return s.norm(buf);
  }
  VecN buf(x.size());
  lincomb(a, x, b, y, buf);
  return s.norm(buf);
}

namespace detail {

/// The product searches run on ||.||.||.|| and take the square root
/// afterwards (a monotone transform keeps the argmax). Error bound follows
/// via |sqrt(a) - sqrt(b)| <= |a - b| / sqrt(b).
inline Estimate sqrt_transform(Estimate e, double target_tol) {
  double v = std::sqrt(std::max(0.0, e.value));
  if (std::isfinite(e.error_bound)) e.error_bound = v > 0.0 ? e.error_bound / v : std::sqrt(e.error_bound);
  e.value = v;
  e.tolerance_met = std::isfinite(e.error_bound) && e.error_bound <= target_tol;
  return e;
}

}  // namespace detail

/// T: sup of the geometric mean of ||x+y|| and ||x-y|| over unit pairs.
inline Estimate t_constant(const NormedSpace& space, const SearchConfig& cfg) {
  auto f = [&](std::span<const double> x, std::span<const double> y) {
    return comb_norm(space, 1, x, 1, y) * comb_norm(space, 1, x, -1, y);
  };
  return detail::sqrt_transform(search::maximize_pairwise(space, f, cfg), cfg.target_tol);
}

/// T1(kappa, tau): sup of the geometric mean of ||kx+ty|| and ||kx-ty||.
inline Estimate t1_constant(const NormedSpace& space, ParamPair pp, const SearchConfig& cfg) {
  pp.validate();
  auto f = [&, pp](std::span<const double> x, std::span<const double> y) {
    return comb_norm(space, pp.kappa, x, pp.tau, y) * comb_norm(space, pp.kappa, x, -pp.tau, y);
  };
  return detail::sqrt_transform(search::maximize_pairwise(space, f, cfg), cfg.target_tol);
}

/// T2(kappa, tau): the skew variant, sup of the geometric mean of
/// ||kx+ty|| and ||tx-ky||.
inline Estimate t2_constant(const NormedSpace& space, ParamPair pp, const SearchConfig& cfg) {
  pp.validate();
  auto f = [&, pp](std::span<const double> x, std::span<const double> y) {
    return comb_norm(space, pp.kappa, x, pp.tau, y) * comb_norm(space, pp.tau, x, -pp.kappa, y);
  };
  return detail::sqrt_transform(search::maximize_pairwise(space, f, cfg), cfg.target_tol);
}

/// James constant: sup of min(||x+y||, ||x-y||).
inline Estimate james_constant(const NormedSpace& space, const SearchConfig& cfg) {
  auto f = [&](std::span<const double> x, std::span<const double> y) {
    return std::min(comb_norm(space, 1, x, 1, y), comb_norm(space, 1, x, -1, y));
  };
  return search::maximize_pairwise(space, f, cfg);
}

/// C'_NJ: the von Neumann-Jordan quotient restricted to the unit sphere.
inline Estimate cnj_prime_constant(const NormedSpace& space, const SearchConfig& cfg) {
  auto f = [&](std::span<const double> x, std::span<const double> y) {
    double p = comb_norm(space, 1, x, 1, y), q = comb_norm(space, 1, x, -1, y);
    return (p * p + q * q) / 4.0;
  };
  return search::maximize_pairwise(space, f, cfg);
}

/// C_NJ over all pairs not both zero. Homogeneity reduces the domain to
/// ||x|| = 1, ||y|| = t with t in [0,1] (swap x and y if needed), so the
/// search adds a 64-point radial axis. t = 0 is kept: the quotient is 1
/// there. The witness stores the unit directions plus `scale` = t.
inline Estimate cnj_constant(const NormedSpace& space, const SearchConfig& cfg) {
  auto g = [&](std::span<const double> x, std::span<const double> y, double t) {
    double p = comb_norm(space, 1, x, t, y), q = comb_norm(space, 1, x, -t, y);
    return (p * p + q * q) / (2.0 + 2.0 * t * t);
  };
  return search::maximize_pairwise_scaled(space, g, 0.0, 1.0, 64, cfg);
}

/// A2: sup of the arithmetic mean of ||x+y|| and ||x-y||.
inline Estimate a2_constant(const NormedSpace& space, const SearchConfig& cfg) {
  auto f = [&](std::span<const double> x, std::span<const double> y) {
    return 0.5 * (comb_norm(space, 1, x, 1, y) + comb_norm(space, 1, x, -1, y));
  };
  return search::maximize_pairwise(space, f, cfg);
}

/// A_{kappa-tau}: sup of (||kx+ty|| + ||tx-ky||) / 2.
inline Estimate a_kt_constant(const NormedSpace& space, ParamPair pp, const SearchConfig& cfg) {
  pp.validate();
  auto f = [&, pp](std::span<const double> x, std::span<const double> y) {
    return 0.5 * (comb_norm(space, pp.kappa, x, pp.tau, y) +
                  comb_norm(space, pp.tau, x, -pp.kappa, y));
  };
  return search::maximize_pairwise(space, f, cfg);
}

/// Modulus of convexity delta_X(eps): inf of 1 - ||x+y||/2 over unit pairs
/// with ||x-y|| >= eps. Defined for eps in [0, 2], dim = 2.
inline Estimate convexity_modulus(const NormedSpace& space, double eps, const SearchConfig& cfg) {
  if (!(eps >= 0.0) || !(eps <= 2.0)) throw DomainError("eps must lie in [0, 2]");
  auto obj = [&](std::span<const double> x, std::span<const double> y) {
    return 1.0 - 0.5 * comb_norm(space, 1, x, 1, y);
  };
  return search::minimize_constrained_pair(space, obj, eps, cfg);
}

/// Dispatcher used by the CLI.
inline Estimate compute(const NormedSpace& space, ConstantId id, ParamPair pp, double eps,
                        const SearchConfig& cfg) {
  switch (id) {
    case ConstantId::T: return t_constant(space, cfg);
    case ConstantId::T1: return t1_constant(space, pp, cfg);
    case ConstantId::T2: return t2_constant(space, pp, cfg);
    case ConstantId::J: return james_constant(space, cfg);
    case ConstantId::CNJ: return cnj_constant(space, cfg);
    case ConstantId::CNJ_PRIME: return cnj_prime_constant(space, cfg);
    case ConstantId::A2: return a2_constant(space, cfg);
    case ConstantId::A_KT: return a_kt_constant(space, pp, cfg);
    case ConstantId::DELTA: return convexity_modulus(space, eps, cfg);
  }
  throw ParseError("unknown constant");
}

/// The defining functional of a constant, evaluated at a witness pair.
/// `scale` is the radial factor of the second vector (C_NJ witnesses).
inline double evaluate_objective(const NormedSpace& space, ConstantId id, ParamPair pp,
                                 std::span<const double> x, std::span<const double> y,
                                 double scale = 1.0) {
  switch (id) {
    case ConstantId::T:
      return std::sqrt(comb_norm(space, 1, x, 1, y) * comb_norm(space, 1, x, -1, y));
    case ConstantId::T1:
      return std::sqrt(comb_norm(space, pp.kappa, x, pp.tau, y) *
                       comb_norm(space, pp.kappa, x, -pp.tau, y));
    case ConstantId::T2:
      return std::sqrt(comb_norm(space, pp.kappa, x, pp.tau, y) *
                       comb_norm(space, pp.tau, x, -pp.kappa, y));
    case ConstantId::J:
      return std::min(comb_norm(space, 1, x, 1, y), comb_norm(space, 1, x, -1, y));
    case ConstantId::CNJ: {
      double p = comb_norm(space, 1, x, scale, y), q = comb_norm(space, 1, x, -scale, y);
      double nx = space.norm(x), ny = scale * space.norm(y);
      return (p * p + q * q) / (2.0 * nx * nx + 2.0 * ny * ny);
    }
    case ConstantId::CNJ_PRIME: {
      double p = comb_norm(space, 1, x, 1, y), q = comb_norm(space, 1, x, -1, y);
      return (p * p + q * q) / 4.0;
    }
    case ConstantId::A2:
      return 0.5 * (comb_norm(space, 1, x, 1, y) + comb_norm(space, 1, x, -1, y));
    case ConstantId::A_KT:
      return 0.5 * (comb_norm(space, pp.kappa, x, pp.tau, y) +
                    comb_norm(space, pp.tau, x, -pp.kappa, y));
    case ConstantId::DELTA:
      return 1.0 - 0.5 * comb_norm(space, 1, x, 1, y);
  }
  throw ParseError("unknown constant");
}

/// A closed-form value with a note on where it comes from.
struct ExactValue {
  double value = 0.0;
  std::string source;
};

/// The catalog of closed forms used for regression. Returns empty when no
/// entry covers (space, id, params).
inline std::optional<ExactValue> exact_value(const NormedSpace& space, ConstantId id,
                                             ParamPair pp = {1.0, 1.0}, double /*eps*/ = 0.0) {
  const double k = pp.kappa, t = pp.tau;
  if (id == ConstantId::T && space.is_hilbert())
    return ExactValue{std::numbers::sqrt2, "inner-product identity; orthogonal witness pair"};
  if (id == ConstantId::T2 && space.is_hilbert())
    return ExactValue{std::hypot(k, t), "inner-product identity; orthogonal witness pair"};
  if (id == ConstantId::T1 && space.family() == Family::lp && space.p() > 2.0 &&
      space.p() != NormedSpace::inf) {
    double p = space.p();
    double v = std::pow(2.0, -1.0 / p) *
               std::pow(std::pow(k + t, p) + std::pow(std::fabs(k - t), p), 1.0 / p);
    return ExactValue{v, "attained at +-2^{-1/p}(1,1) and 2^{-1/p}(1,-1)"};
  }
  if (id == ConstantId::T2 && space.family() == Family::lp && space.p() == 1.0)
    return ExactValue{k + t, "attained at (e1, e2); both norms equal kappa+tau"};
  if (id == ConstantId::T2 && space.family() == Family::day_james) {
    // Vertex-edge analysis of the hexagonal sphere. The extreme-point pair
    // ((0,1),(1,0)) only gives the norm product (kappa v tau)(kappa + tau);
    // when max/min is below the golden ratio the sup moves onto an edge,
    // x = (1,0), y = (-s,-1) with s = (k^2+kt-t^2)/(2kt), and the product
    // becomes (k^2+kt+t^2)^2/(4kt). Cross-checked against dense search.
    const double hi = std::max(k, t), lo = std::min(k, t);
    const double golden = 0.5 * (1.0 + std::sqrt(5.0));
    double prod = hi / lo < golden
                      ? (k * k + k * t + t * t) * (k * k + k * t + t * t) / (4.0 * k * t)
                      : hi * (k + t);
    return ExactValue{std::sqrt(prod),
                      "square root of the vertex-edge product maximum on the hexagonal sphere"};
  }
  return std::nullopt;
}

}  // namespace banach::constants
