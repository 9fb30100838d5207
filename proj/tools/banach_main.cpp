// Command-line front end: compute geometric constants of 2-D normed spaces,
// sweep parameters, verify the inequality catalog, dump witnesses.
//
// Exit codes: 0 success / satisfied / CERTIFIED / UNS
//             1 violated / NOT_CERTIFIED / NOT_UNS
//             2 unknown space, constant or theorem, or bad parameters
//             3 search failure
//             4 unwritable output path
//             5 UNDECIDED classification

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "banach/cache.hpp"
#include "banach/validate.hpp"

namespace {

using namespace banach;
using constants::ConstantId;
using nlohmann::json;

struct Range {
  double lo = 0.0, hi = 0.0;
  bool is_range = false;
  bool given = false;
};

Range parse_range(const std::string& s, const char* flag) {
  Range r;
  r.given = true;
  auto colon = s.find(':');
  auto to_d = [&](const std::string& part) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw ParseError(std::string("bad value for --") + flag + ": " + s);
    }
    if (used != part.size()) throw ParseError(std::string("bad value for --") + flag + ": " + s);
    return v;
  };
  if (colon == std::string::npos) {
    r.lo = r.hi = to_d(s);
  } else {
    r.lo = to_d(s.substr(0, colon));
    r.hi = to_d(s.substr(colon + 1));
    r.is_range = true;
    if (r.hi < r.lo) throw ParseError(std::string("empty range for --") + flag + ": " + s);
  }
  return r;
}

std::vector<double> expand(const Range& r, double step) {
  if (!r.is_range) return {r.lo};
  std::vector<double> vals;
  for (double v = r.lo; v <= r.hi + 1e-12; v += step) vals.push_back(v);
  return vals;
}

struct Options {
  std::string space_id, constant, theorem, format = "table", out, config_file;
  std::string kappa_s, tau_s, eps_s;
  double step = 0.0;
  bool no_cache = false;
  int grid = -1;
  double tol = -1.0;
  long long seed = -1;

  search::SearchConfig make_config() const {
    search::SearchConfig cfg;
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) throw ParseError("cannot open config file: " + config_file);
      json j = json::parse(in, nullptr, false);
      if (j.is_discarded()) throw ParseError("config file is not valid JSON: " + config_file);
      cfg = io::config_from_json(j);
    }
    if (grid > 0) cfg.coarse_grid = grid;
    if (tol > 0) cfg.target_tol = tol;
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    cfg.validate();
    return cfg;
  }
};

void add_common(CLI::App* cmd, Options& o, bool with_constant, bool with_theorem) {
  cmd->add_option("--space", o.space_id, "space id, e.g. lp:1:2, euclid:2, dayjames, poly:<file>")
      ->required();
  if (with_constant)
    cmd->add_option("--constant", o.constant, "T, T1, T2, J, CNJ, CNJp, A2, Akt or delta")
        ->required();
  if (with_theorem)
    cmd->add_option("--theorem", o.theorem,
                    "t1-bounds, t1-vs-t, t2-bounds, t2-delta, t2-cnj, t2-vs-t, uns, "
                    "normal-structure or ball-sphere")
        ->required();
  cmd->add_option("--kappa", o.kappa_s, "kappa (sweep accepts lo:hi)");
  cmd->add_option("--tau", o.tau_s, "tau (sweep accepts lo:hi)");
  cmd->add_option("--eps", o.eps_s, "eps for delta / t2-delta (sweep accepts lo:hi)");
  cmd->add_option("--grid", o.grid, "coarse grid points per angle");
  cmd->add_option("--tol", o.tol, "requested accuracy (target_tol)");
  cmd->add_option("--seed", o.seed, "search seed");
  cmd->add_option("--config", o.config_file, "JSON file with the full search configuration");
  cmd->add_option("--format", o.format, "table, csv or json")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  cmd->add_option("--out", o.out, "write output to this path instead of stdout");
  cmd->add_flag("--no-cache", o.no_cache, "recompute even if a cached record matches");
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw std::ios_base::failure("cannot write to " + o.out);
  f << text;
  if (!f.good()) throw std::ios_base::failure("write failed: " + o.out);
}

std::string witness_str(const VecN& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v[i]);
    s += (i ? ", " : "") + std::string(buf);
  }
  return s + ")";
}

struct ComputeResult {
  search::Estimate est;
  bool cached = false;
  json record;
};

ComputeResult run_compute(const NormedSpace& space, ConstantId id, ParamPair pp, double eps,
                          const search::SearchConfig& cfg, bool no_cache) {
  cache::RunCache store(cache::RunCache::default_dir());
  std::string digest = io::config_digest(cfg);
  std::optional<double> k, t, e;
  if (constants::uses_params(id)) {
    k = pp.kappa;
    t = pp.tau;
  }
  if (constants::uses_eps(id)) e = eps;

  if (!no_cache) {
    if (auto hit = store.lookup(space.id(), constants::to_string(id), k, t, e, digest)) {
      ComputeResult r;
      r.est = io::estimate_from_json(hit->at("result"));
      r.cached = true;
      r.record = *hit;
      r.record["cached"] = true;
      return r;
    }
  }
  ComputeResult r;
  r.est = constants::compute(space, id, pp, eps, cfg);
  r.record = json{{"timestamp", io::iso8601_now()},
                  {"space", space.id()},
                  {"op", constants::to_string(id)},
                  {"digest", digest},
                  {"result", io::to_json(r.est)}};
  if (k) r.record["kappa"] = *k;
  if (t) r.record["tau"] = *t;
  if (e) r.record["eps"] = *e;
  store.append(r.record);
  return r;
}

int cmd_compute(const Options& o, bool witness_mode) {
  NormedSpace space = NormedSpace::from_id(o.space_id);
  ConstantId id = constants::constant_from_string(o.constant);
  ParamPair pp;
  if (o.kappa_s.size()) pp.kappa = parse_range(o.kappa_s, "kappa").lo;
  if (o.tau_s.size()) pp.tau = parse_range(o.tau_s, "tau").lo;
  double eps = 0.0;
  if (constants::uses_eps(id)) {
    if (o.eps_s.empty()) throw ParseError("constant delta requires --eps");
    eps = parse_range(o.eps_s, "eps").lo;
  }
  auto cfg = o.make_config();
  auto res = run_compute(space, id, pp, eps, cfg, o.no_cache);
  const auto& est = res.est;

  std::string text;
  if (o.format == "json") {
    text = res.record.dump(2) + "\n";
  } else if (o.format == "csv") {
    std::optional<double> k, t, e;
    if (constants::uses_params(id)) {
      k = pp.kappa;
      t = pp.tau;
    }
    if (constants::uses_eps(id)) e = eps;
    text = std::string(io::kCsvHeader) + "\n" + io::csv_row(k, t, e, est) + "\n";
  } else {
    char line[256];
    std::snprintf(line, sizeof line, "%s(%s%s%s%s) = %.5f ± %.3g%s\n", o.constant.c_str(),
                  o.space_id.c_str(),
                  constants::uses_params(id)
                      ? (", kappa=" + io::fmt17(pp.kappa) + ", tau=" + io::fmt17(pp.tau)).c_str()
                      : "",
                  constants::uses_eps(id) ? (", eps=" + io::fmt17(eps)).c_str() : "", "",
                  est.value, est.error_bound, res.cached ? "   [cached]" : "");
    text = line;
    std::snprintf(line, sizeof line, "witness: x = %s, y = %s%s\n",
                  witness_str(est.witness_x).c_str(), witness_str(est.witness_y).c_str(),
                  est.scale != 1.0 ? ("  (scale " + io::fmt17(est.scale) + ")").c_str() : "");
    text += line;
    std::snprintf(line, sizeof line, "evaluations = %llu, method = %s\n",
                  static_cast<unsigned long long>(est.evaluations),
                  search::to_string(est.method));
    text += line;
    if (witness_mode) {
      double recheck = constants::evaluate_objective(space, id, pp, est.witness_x, est.witness_y,
                                                     est.scale);
      std::snprintf(line, sizeof line, "recheck: objective at witness = %.17g (value %.17g)\n",
                    recheck, est.value);
      text += line;
    }
  }
  emit(o, text);
  return 0;
}

int cmd_sweep(const Options& o) {
  NormedSpace space = NormedSpace::from_id(o.space_id);
  ConstantId id = constants::constant_from_string(o.constant);
  if (space.dim() != 2) throw UnsupportedSpaceError("sweep requires a 2-D space");

  Range rk, rt, re;
  if (o.kappa_s.size()) rk = parse_range(o.kappa_s, "kappa");
  if (o.tau_s.size()) rt = parse_range(o.tau_s, "tau");
  if (o.eps_s.size()) re = parse_range(o.eps_s, "eps");
  bool any_range = rk.is_range || rt.is_range || re.is_range;
  if (!any_range) throw ParseError("sweep needs at least one lo:hi range");
  if (o.step <= 0.0) throw ParseError("sweep requires --step > 0");
  if (constants::uses_eps(id) && !re.given) throw ParseError("constant delta requires --eps");
  if (!constants::uses_eps(id) && re.given)
    throw ParseError("--eps does not apply to constant " + o.constant);
  if (!constants::uses_params(id) && (rk.given || rt.given))
    throw ParseError("constant " + o.constant + " takes no kappa/tau parameters");

  auto cfg = o.make_config();
  auto kappas = constants::uses_params(id) ? expand(rk.given ? rk : Range{1, 1, false, true}, o.step)
                                           : std::vector<double>{1.0};
  auto taus = constants::uses_params(id) ? expand(rt.given ? rt : Range{1, 1, false, true}, o.step)
                                         : std::vector<double>{1.0};
  auto epss = constants::uses_eps(id) ? expand(re, o.step) : std::vector<double>{0.0};

  std::vector<std::string> rows;
  json jrows = json::array();
  for (double k : kappas)
    for (double t : taus)
      for (double e : epss) {
        auto est = constants::compute(space, id, {k, t}, e, cfg);
        std::optional<double> ok, ot, oe;
        if (constants::uses_params(id)) {
          ok = k;
          ot = t;
        }
        if (constants::uses_eps(id)) oe = e;
        if (o.format == "json") {
          json r = io::to_json(est);
          r["kappa"] = io::opt(ok);
          r["tau"] = io::opt(ot);
          r["eps"] = io::opt(oe);
          jrows.push_back(std::move(r));
        } else {
          rows.push_back(io::csv_row(ok, ot, oe, est));
        }
      }

  std::string text;
  if (o.format == "json") {
    text = jrows.dump(2) + "\n";
  } else {
    text = std::string(io::kCsvHeader) + "\n";
    for (const auto& r : rows) text += r + "\n";
  }
  emit(o, text);
  return 0;
}

int cmd_verify(const Options& o) {
  NormedSpace space = NormedSpace::from_id(o.space_id);
  ParamPair pp;
  if (o.kappa_s.size()) pp.kappa = parse_range(o.kappa_s, "kappa").lo;
  if (o.tau_s.size()) pp.tau = parse_range(o.tau_s, "tau").lo;
  auto cfg = o.make_config();
  const std::string& th = o.theorem;

  cache::RunCache store(cache::RunCache::default_dir());
  std::string digest = io::config_digest(cfg);
  double eps = 0.0;
  bool needs_eps = th == "t2-delta";
  if (needs_eps) {
    if (o.eps_s.empty()) throw ParseError("theorem t2-delta requires --eps");
    eps = parse_range(o.eps_s, "eps").lo;
  }
  bool has_params = th != "uns";
  std::optional<double> ck, ct, ce;
  if (has_params) {
    ck = pp.kappa;
    ct = pp.tau;
  }
  if (needs_eps) ce = eps;

  json out;
  int code = 0;
  bool cached = false;
  if (!o.no_cache) {
    if (auto hit = store.lookup(space.id(), "verify:" + th, ck, ct, ce, digest)) {
      out = hit->at("result");
      code = hit->at("exit").get<int>();
      cached = true;
    }
  }
  if (!cached) {
    if (th == "uns") {
      auto rep = theorems::classify_uniform_nonsquareness(space, cfg);
      out = io::to_json(rep);
      code = rep.verdict == theorems::Squareness::uns       ? 0
             : rep.verdict == theorems::Squareness::not_uns ? 1
                                                            : 5;
    } else {
      theorems::TheoremReport rep;
      if (th == "t1-bounds") rep = theorems::check_t1_bounds(space, pp, cfg);
      else if (th == "t1-vs-t") rep = theorems::check_t1_t_relation(space, pp, cfg);
      else if (th == "t2-bounds") rep = theorems::check_t2_bounds(space, pp, cfg);
      else if (th == "t2-delta") rep = theorems::check_t2_delta_bounds(space, pp, eps, cfg);
      else if (th == "t2-cnj") rep = theorems::check_t2_cnj_bound(space, pp, cfg);
      else if (th == "t2-vs-t") rep = theorems::check_t2_t_relation(space, pp, cfg);
      else if (th == "normal-structure") rep = theorems::certify_normal_structure(space, pp, cfg);
      else if (th == "ball-sphere") rep = theorems::check_ball_sphere_equivalence(space, pp, cfg);
      else {
        std::string known;
        for (const auto& id : theorems::theorem_ids()) known += (known.empty() ? "" : ", ") + id;
        throw ParseError("unknown theorem id: " + th + " (expected one of " + known + ")");
      }
      out = io::to_json(rep);
      code = rep.satisfied ? 0 : 1;
    }
    json record{{"timestamp", io::iso8601_now()}, {"space", space.id()},
                {"op", "verify:" + th},           {"digest", digest},
                {"result", out},                  {"exit", code}};
    if (ck) record["kappa"] = *ck;
    if (ct) record["tau"] = *ct;
    if (ce) record["eps"] = *ce;
    store.append(record);
  }
  if (cached) out["cached"] = true;
  emit(o, out.dump(2) + "\n");
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical geometry of 2-D normed spaces: geometric constants, "
               "parameter sweeps and inequality verification"};
  app.require_subcommand(1);

  Options oc, os, ov, ow;
  CLI::App* compute = app.add_subcommand("compute", "estimate one constant");
  add_common(compute, oc, true, false);
  CLI::App* sweep = app.add_subcommand("sweep", "estimate a constant over a parameter grid");
  add_common(sweep, os, true, false);
  sweep->add_option("--step", os.step, "grid step for lo:hi ranges")->required();
  os.format = "csv";
  CLI::App* verify = app.add_subcommand("verify", "run one inequality / classification check");
  add_common(verify, ov, false, true);
  ov.format = "json";
  CLI::App* witness = app.add_subcommand("witness", "print the extremal pair and recheck it");
  add_common(witness, ow, true, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }

  try {
    if (compute->parsed()) return cmd_compute(oc, false);
    if (sweep->parsed()) return cmd_sweep(os);
    if (verify->parsed()) return cmd_verify(ov);
    if (witness->parsed()) return cmd_compute(ow, true);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedSpaceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "search failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "search failure: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
