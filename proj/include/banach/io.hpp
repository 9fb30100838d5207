#pragma once

#include <chrono>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "banach/search.hpp"
#include "banach/theorems.hpp"

namespace banach::io {

using nlohmann::json;

/// 17 significant digits: enough to reproduce any double exactly, so a
/// formatted file parses and re-emits byte-identically.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string iso8601_now() {
  using namespace std::chrono;
  auto t = system_clock::to_time_t(system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// --- SearchConfig ----------------------------------------------------------

inline json to_json(const search::SearchConfig& c) {
  return json{{"coarse_grid", c.coarse_grid}, {"refine_rounds", c.refine_rounds},
              {"shrink", c.shrink},           {"multistart", c.multistart},
              {"seed", c.seed},               {"target_tol", c.target_tol},
              {"use_symmetry", c.use_symmetry}};
}

inline search::SearchConfig config_from_json(const json& j) {
  search::SearchConfig c;
  c.coarse_grid = j.value("coarse_grid", c.coarse_grid);
  c.refine_rounds = j.value("refine_rounds", c.refine_rounds);
  c.shrink = j.value("shrink", c.shrink);
  c.multistart = j.value("multistart", c.multistart);
  c.seed = j.value("seed", c.seed);
  c.target_tol = j.value("target_tol", c.target_tol);
  c.use_symmetry = j.value("use_symmetry", c.use_symmetry);
  c.validate();
  return c;
}

/// FNV-1a over the canonical rendering of every field; keys cache entries.
inline std::string config_digest(const search::SearchConfig& c) {
  std::string s = "grid=" + std::to_string(c.coarse_grid) +
                  ";rounds=" + std::to_string(c.refine_rounds) + ";shrink=" + fmt17(c.shrink) +
                  ";multistart=" + std::to_string(c.multistart) +
                  ";seed=" + std::to_string(c.seed) + ";tol=" + fmt17(c.target_tol) +
                  ";sym=" + (c.use_symmetry ? "1" : "0");
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// --- Estimate ----------------------------------------------------------------

inline json to_json(const search::Estimate& e) {
  json j;
  j["value"] = e.value;
  j["error_bound"] = std::isfinite(e.error_bound) ? json(e.error_bound) : json(nullptr);
  j["evaluations"] = e.evaluations;
  j["method"] = search::to_string(e.method);
  j["witness"] = json{{"x", e.witness_x}, {"y", e.witness_y}, {"scale", e.scale}};
  j["tolerance_met"] = e.tolerance_met;
  return j;
}

inline search::Estimate estimate_from_json(const json& j) {
  search::Estimate e;
  e.value = j.at("value").get<double>();
  e.error_bound = j.at("error_bound").is_null() ? std::numeric_limits<double>::infinity()
                                                : j.at("error_bound").get<double>();
  e.evaluations = j.at("evaluations").get<std::uint64_t>();
  e.method = j.at("method").get<std::string>() == "multistart" ? search::Method::multistart
                                                               : search::Method::grid2d;
  e.witness_x = j.at("witness").at("x").get<VecN>();
  e.witness_y = j.at("witness").at("y").get<VecN>();
  e.scale = j.at("witness").value("scale", 1.0);
  e.tolerance_met = j.value("tolerance_met", false);
  return e;
}

// --- Reports -----------------------------------------------------------------

inline json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

inline json to_json(const theorems::TheoremReport& r) {
  json j;
  j["theorem"] = r.theorem_id;
  j["space"] = r.space_id;
  j["kappa"] = opt(r.kappa);
  j["tau"] = opt(r.tau);
  j["eps"] = opt(r.eps);
  j["lhs"] = opt(r.lhs);
  j["mid"] = opt(r.mid);
  j["rhs"] = opt(r.rhs);
  j["margin"] = std::isfinite(r.margin) ? json(r.margin) : json(nullptr);
  j["tol"] = std::isfinite(r.tol) ? json(r.tol) : json(nullptr);
  j["satisfied"] = r.satisfied;
  j["verdict"] = r.verdict;
  if (!r.caveat.empty()) j["caveat"] = r.caveat;
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

inline json to_json(const theorems::ClassificationReport& r) {
  return json{{"theorem", "uns"},
              {"space", r.space_id},
              {"verdict", theorems::to_string(r.verdict)},
              {"t", json{{"value", r.t_value},
                         {"error_bound", std::isfinite(r.t_error) ? json(r.t_error) : json(nullptr)}}},
              {"t2_at_1_2", json{{"value", r.t2_value},
                                 {"error_bound", std::isfinite(r.t2_error) ? json(r.t2_error) : json(nullptr)},
                                 {"verdict", theorems::to_string(r.t2_verdict)}}},
              {"criteria_agree", r.criteria_agree}};
}

// --- CSV -----------------------------------------------------------------------

inline constexpr const char* kCsvHeader = "kappa,tau,eps,value,error_bound,wx1,wy1,wx2,wy2";

/// One sweep/compute row. Parameters that do not apply stay empty; the second
/// witness is emitted with its radial scale applied.
inline std::string csv_row(std::optional<double> kappa, std::optional<double> tau,
                           std::optional<double> eps, const search::Estimate& e) {
  auto cell = [](const std::optional<double>& v) { return v ? fmt17(*v) : std::string(); };
  std::string row = cell(kappa) + "," + cell(tau) + "," + cell(eps) + "," + fmt17(e.value) +
                    "," + fmt17(e.error_bound);
  row += "," + fmt17(e.witness_x[0]) + "," + fmt17(e.witness_x[1]);
  row += "," + fmt17(e.scale * e.witness_y[0]) + "," + fmt17(e.scale * e.witness_y[1]);
  return row;
}

}  // namespace banach::io
