#pragma once

#include <cmath>
#include <string>

#include "banach/rng.hpp"
#include "banach/spaces.hpp"

namespace banach {

/// Outcome of the statistical norm-axiom check. Thresholds: homogeneity and
/// positivity violations at most 1e-9, triangle slack at least -1e-9.
struct ValidationReport {
  int samples = 0;
  double worst_homogeneity = 0.0;    // max |  ||a v|| - |a| ||v||  | / (1 + ||v||)
  double worst_triangle_slack = 0.0; // min ||u|| + ||v|| - ||u+v||
  double min_positivity_ratio = 0.0; // min ||v|| / ||v||_inf over nonzero probes
  double zero_norm = 0.0;            // ||0||
  bool passed = false;
  std::string note;

  static constexpr double hom_tol = 1e-9;
  static constexpr double tri_tol = 1e-9;
  static constexpr double pos_tol = 1e-9;
};

/// Checks absolute homogeneity, the triangle inequality and positivity on
/// `samples` seeded pseudo-random probes plus the signed basis vectors.
/// Accepts any callable norm so user-supplied polyhedral files and
/// deliberately broken "norms" can be screened alike.
template <class NormFn>
ValidationReport validate_norm_axioms(NormFn&& nf, int dim, int samples, std::uint64_t seed) {
  if (samples < 1) throw DomainError("validate_norm_axioms: samples must be >= 1");
  ValidationReport rep;
  rep.samples = samples;
  rep.worst_triangle_slack = std::numeric_limits<double>::infinity();
  rep.min_positivity_ratio = std::numeric_limits<double>::infinity();
  Rng rng(mix_seed(seed, 0xA110A5ull));

  VecN zero(static_cast<std::size_t>(dim), 0.0);
  rep.zero_norm = nf(zero);

  auto linf = [](const VecN& v) {
    double m = 0.0;
    for (double c : v) m = std::max(m, std::fabs(c));
    return m;
  };
  auto probe_positivity = [&](const VecN& v) {
    double m = linf(v);
    if (m == 0.0) return;
    double ratio = nf(v) / m;
    if (ratio < rep.min_positivity_ratio) {
      rep.min_positivity_ratio = ratio;
      if (ratio < ValidationReport::pos_tol && rep.note.empty()) {
        std::string s = "positivity violated at (";
        for (int i = 0; i < dim; ++i) s += (i ? "," : "") + std::to_string(v[i]);
        rep.note = s + ")";
      }
    }
  };

  // deterministic probes first: the signed basis vectors
  for (int i = 0; i < dim; ++i)
    for (double sgn : {1.0, -1.0}) {
      VecN e(static_cast<std::size_t>(dim), 0.0);
      e[i] = sgn;
      probe_positivity(e);
    }

  for (int s = 0; s < samples; ++s) {
    VecN u = rng.uniform_vec(dim, -1.0, 1.0);
    VecN v = rng.uniform_vec(dim, -1.0, 1.0);
    double alpha = rng.uniform(-10.0, 10.0);

    double nu = nf(u), nv = nf(v);
    probe_positivity(u);
    probe_positivity(v);

    VecN av = scaled(v, alpha);
    double hom = std::fabs(nf(av) - std::fabs(alpha) * nv) / (1.0 + nv);
    rep.worst_homogeneity = std::max(rep.worst_homogeneity, hom);

    VecN uv(static_cast<std::size_t>(dim));
    lincomb(1.0, u, 1.0, v, uv);
    rep.worst_triangle_slack = std::min(rep.worst_triangle_slack, nu + nv - nf(uv));
  }

  rep.passed = rep.worst_homogeneity <= ValidationReport::hom_tol &&
               rep.worst_triangle_slack >= -ValidationReport::tri_tol &&
               rep.min_positivity_ratio >= ValidationReport::pos_tol &&
               rep.zero_norm <= 1e-12;
  if (!rep.passed && rep.note.empty()) {
    if (rep.worst_homogeneity > ValidationReport::hom_tol) rep.note = "homogeneity violated";
    else if (rep.worst_triangle_slack < -ValidationReport::tri_tol) rep.note = "triangle inequality violated";
    else rep.note = "zero vector has nonzero norm";
  }
  return rep;
}

inline ValidationReport validate_norm_axioms(const NormedSpace& space, int samples,
                                             std::uint64_t seed) {
  return validate_norm_axioms([&](const VecN& v) { return space.norm(v); }, space.dim(), samples,
                              seed);
}

}  // namespace banach
