// Command-line front end: evaluates single sums, runs identity checks and
// seeded sweeps, drives the residue engine, and reports every run as one
// JSON document (the human text is a formatting of the same payload).
//
// Exit codes: 0 all checks pass, 1 numeric failure or convergence failure,
// 2 usage error (bad flags, malformed parameters, violated preconditions).

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "esum/cache.hpp"
#include "esum/common.hpp"
#include "esum/eulersum.hpp"
#include "esum/identity.hpp"
#include "esum/mpl.hpp"
#include "esum/polylog.hpp"
#include "esum/residue.hpp"
#include "esum/unit_param.hpp"

using nlohmann::json;
using namespace esum;

namespace {

json cpair(cplx z) { return json::array({z.real(), z.imag()}); }

std::string cstr(const json& pair) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%.10g%+.10gi", pair[0].get<double>(),
                pair[1].get<double>());
  return buf;
}

bool looks_integer(const std::string& s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

IdentityParams parse_identity_params(const std::vector<std::string>& kvs) {
  IdentityParams out;
  for (const std::string& kv : kvs) {
    size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == kv.size())
      throw domain_error("parameter must be key=value: '" + kv + "'");
    std::string key = kv.substr(0, eq);
    std::string val = kv.substr(eq + 1);
    if (looks_integer(val))
      out.ints[key] = std::stoll(val);
    else
      out.units[key] = UnitParam::parse(val);
  }
  return out;
}

std::vector<UnitParam> parse_units(const std::vector<std::string>& texts) {
  std::vector<UnitParam> out;
  out.reserve(texts.size());
  for (const std::string& t : texts) out.push_back(UnitParam::parse(t));
  return out;
}

json value_payload(const ValueWithError& v) {
  json j;
  j["value"] = cpair(v.value);
  j["abs_err"] = v.abs_err;
  j["terms_used"] = v.terms_used;
  j["accelerated"] = v.accelerated;
  return j;
}

json check_payload(const IdentityCheck& c) {
  json j;
  j["id"] = c.id;
  j["lhs"] = cpair(c.lhs.value);
  j["lhs_abs_err"] = c.lhs.abs_err;
  j["rhs"] = cpair(c.rhs.value);
  j["rhs_abs_err"] = c.rhs.abs_err;
  j["abs_diff"] = c.abs_diff;
  j["tol_used"] = c.tol_used;
  j["pass"] = c.pass;
  j["alt_abs_diff"] = c.alt_abs_diff;  // negative: alternate not evaluated
  j["terms_used"] = c.terms_used;
  j["params"] = c.params_echo;
  j["notes"] = c.notes;
  return j;
}

/// Short display form for a root argument: "+1"/"-1" for orders 1 and 2,
/// the canonical serialization otherwise.
std::string short_unit(const UnitParam& u) {
  if (u.is_exact() && u.order() == 1) return "1";
  if (u.is_exact() && u.order() == 2) return "-1";
  return u.serialize();
}

void human_value(const json& r) {
  std::printf("value      = %s\n", cstr(r["value"]).c_str());
  std::printf("abs_err    = %.3e\n", r["abs_err"].get<double>());
  std::printf("terms_used = %lld\n", r["terms_used"].get<long long>());
}

void human_check(const json& c, const char* indent = "") {
  std::printf("%s%s: %s  |lhs-rhs| = %.3e  (tol %.1e)\n", indent,
              c["id"].get<std::string>().c_str(),
              c["pass"].get<bool>() ? "PASS" : "FAIL",
              c["abs_diff"].get<double>(), c["tol_used"].get<double>());
  std::printf("%s  lhs = %s  (err %.1e)\n", indent, cstr(c["lhs"]).c_str(),
              c["lhs_abs_err"].get<double>());
  std::printf("%s  rhs = %s  (err %.1e)\n", indent, cstr(c["rhs"]).c_str(),
              c["rhs_abs_err"].get<double>());
  if (!c["params"].get<std::string>().empty())
    std::printf("%s  params: %s\n", indent,
                c["params"].get<std::string>().c_str());
  if (c["alt_abs_diff"].get<double>() >= 0.0)
    std::printf("%s  alternate reading residual = %.3e\n", indent,
                c["alt_abs_diff"].get<double>());
  for (const auto& n : c["notes"])
    std::printf("%s  note: %s\n", indent, n.get<std::string>().c_str());
}

struct Globals {
  bool json_out = false;
  double tol = 0.0;  // 0 = not set
  long long max_terms = 0;
  std::string accel = "aitken";
  std::string cache_path;
  unsigned long long seed = 1;
  int count = 20;
  long long nmax = 2000;

  EvalConfig config(bool tol_into_config) const {
    EvalConfig cfg;
    if (tol_into_config && tol > 0) {
      cfg.target_tol = tol;
      cfg.boundary_target_tol = tol;
    }
    if (max_terms > 0) cfg.max_terms = max_terms;
    if (accel == "none")
      cfg.accel_mode = AccelMode::None;
    else if (accel == "aitken")
      cfg.accel_mode = AccelMode::AitkenIterated;
    else if (accel == "levin")
      cfg.accel_mode = AccelMode::LevinU;
    else
      cfg.accel_mode = AccelMode::RichardsonOnPartialTotals;
    cfg.validate();
    return cfg;
  }

  json echo() const {
    json j;
    j["tol"] = tol;
    j["max_terms"] = max_terms;
    j["accel"] = accel;
    j["cache"] = cache::resolve_path(cache_path);
    j["seed"] = seed;
    j["count"] = count;
    j["nmax"] = nmax;
    return j;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Evaluator for harmonic-weighted geometric sums, polylogarithms, and "
      "nested polylogarithms, with an identity registry and a truncated-"
      "Laurent residue engine.\n"
      "Argument grammar: root:a/N means e^{2*pi*i*a/N}; c:RE+IMi is a "
      "floating complex on the closed unit disk. List flags are "
      "comma-separated with no spaces."};
  app.require_subcommand(1);

  Globals g;
  app.add_flag("--json", g.json_out, "emit the run report as JSON");
  app.add_option("--tol", g.tol,
                 "evaluation tolerance; for identity check/sweep this is a "
                 "strict pass bar on |lhs-rhs| with no error cushion");
  app.add_option("--max-terms", g.max_terms, "series term budget per value");
  app.add_option("--accel", g.accel, "boundary-series acceleration mode")
      ->check(CLI::IsMember({"none", "aitken", "levin", "richardson"}));
  app.add_option("--cache", g.cache_path,
                 "value-cache file (default $EULERSUM_CACHE or "
                 "./.eulersum-cache.json)");
  app.add_option("--seed", g.seed, "sweep RNG seed");
  app.add_option("--count", g.count, "sweep sample count");
  app.add_option("--nmax", g.nmax, "residue scan depth");

  // ---- eval ----------------------------------------------------------
  CLI::App* eval = app.add_subcommand("eval", "evaluate a single value");
  eval->require_subcommand(1);
  eval->fallthrough();

  int ev_p = 2;
  long long ev_n = 0;
  int ev_q = 2;
  std::string ev_x, ev_idx;
  std::vector<int> ev_k, ev_ps;
  std::vector<std::string> ev_xs;

  CLI::App* ev_poly = eval->add_subcommand("polylog", "Li_p(x)");
  ev_poly->fallthrough();
  ev_poly->add_option("--p", ev_p, "exponent")->required();
  ev_poly->add_option("--x", ev_x, "argument")->required();

  CLI::App* ev_zetan =
      eval->add_subcommand("zetan", "finite sum zeta_n(p; x)");
  ev_zetan->fallthrough();
  ev_zetan->add_option("--n", ev_n, "truncation index")->required();
  ev_zetan->add_option("--p", ev_p, "exponent")->required();
  ev_zetan->add_option("--x", ev_x, "argument")->required();

  CLI::App* ev_mpl = eval->add_subcommand(
      "mpl", "nested sum Li_{k1,...,kr}(x1,...,xr), first index innermost");
  ev_mpl->fallthrough();
  ev_mpl->add_option("--k", ev_k, "exponent list")->required()->delimiter(',');
  ev_mpl->add_option("--xs", ev_xs, "argument list")
      ->required()
      ->delimiter(',');

  CLI::App* ev_amzv = eval->add_subcommand(
      "amzv", "alternating nested value in bar notation, e.g. bar3,2,bar1,4");
  ev_amzv->fallthrough();
  ev_amzv->add_option("--idx", ev_idx, "bar-notation index string")
      ->required();

  CLI::App* ev_esum = eval->add_subcommand(
      "eulersum", "sum_n [prod_j zeta_n(p_j; x_j)] x^n / n^q");
  ev_esum->fallthrough();
  ev_esum->add_option("--p", ev_ps, "inner exponent list")
      ->required()
      ->delimiter(',');
  ev_esum->add_option("--q", ev_q, "outer exponent")->required();
  ev_esum->add_option("--xs", ev_xs, "inner argument list")
      ->required()
      ->delimiter(',');
  ev_esum->add_option("--x", ev_x, "outer argument (default 1)");

  // ---- identity ------------------------------------------------------
  CLI::App* ident =
      app.add_subcommand("identity", "registry checks and sweeps");
  ident->require_subcommand(1);
  ident->fallthrough();

  std::string id_id;
  std::vector<std::string> id_params;

  CLI::App* id_list = ident->add_subcommand("list", "print the registry");
  id_list->fallthrough();

  CLI::App* id_check =
      ident->add_subcommand("check", "check one identity at parameters");
  id_check->fallthrough();
  id_check->add_option("--id", id_id, "registry id")->required();
  id_check->add_option("--params", id_params,
                       "key=value list, e.g. q=3,x=root:1/2")
      ->delimiter(',');

  CLI::App* id_sweep =
      ident->add_subcommand("sweep", "seeded random-parameter sweep");
  id_sweep->fallthrough();
  id_sweep->add_option("--id", id_id, "registry id")->required();

  // ---- residue -------------------------------------------------------
  CLI::App* resid =
      app.add_subcommand("residue", "truncated-Laurent residue engine");
  resid->require_subcommand(1);
  resid->fallthrough();

  std::string rs_kernel;
  std::vector<int> rs_p;
  int rs_q = 1;
  std::vector<std::string> rs_xs;
  std::string rs_x;

  auto residue_flags = [&](CLI::App* sub) {
    sub->fallthrough();
    sub->add_option("--kernel", rs_kernel, "F (extra simple-pole factor) or G")
        ->required()
        ->check(CLI::IsMember({"F", "G"}));
    sub->add_option("--p", rs_p, "factor order list")
        ->required()
        ->delimiter(',');
    sub->add_option("--q", rs_q, "central pole order")->required();
    sub->add_option("--xs", rs_xs, "factor argument list")
        ->required()
        ->delimiter(',');
    sub->add_option("--x", rs_x,
                    "simple-pole factor argument (kernel F only)");
  };
  CLI::App* rs_check = resid->add_subcommand(
      "check", "scan all poles; the residue total must vanish");
  residue_flags(rs_check);
  CLI::App* rs_decomp = resid->add_subcommand(
      "decompose",
      "split the scan into forward / mirror / remainder branches");
  residue_flags(rs_decomp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return 2;
  }

  std::string cmdline;
  for (int i = 0; i < argc; ++i) {
    if (i) cmdline += ' ';
    cmdline += argv[i];
  }

  const auto t0 = std::chrono::steady_clock::now();
  json results;
  bool pass = true;

  try {
    std::string warn;
    if (!cache::load_into_memo(cache::resolve_path(g.cache_path), &warn) &&
        !warn.empty())
      std::fprintf(stderr, "warning: %s\n", warn.c_str());

    if (ev_poly->parsed()) {
      EvalConfig cfg = g.config(true);
      ValueWithError v = polylog(ev_p, UnitParam::parse(ev_x), cfg);
      results = value_payload(v);
      results["kind"] = "polylog";
      results["p"] = ev_p;
      results["x"] = UnitParam::parse(ev_x).serialize();
    } else if (ev_zetan->parsed()) {
      if (ev_n < 0) throw domain_error("truncation index must be >= 0");
      UnitParam x = UnitParam::parse(ev_x);
      ValueWithError v;
      v.value = finite_polylog_sum(ev_n, ev_p, x);
      v.abs_err = 1e-15 * static_cast<double>(ev_n);
      v.terms_used = ev_n;
      results = value_payload(v);
      results["kind"] = "zetan";
      results["n"] = ev_n;
      results["p"] = ev_p;
      results["x"] = x.serialize();
    } else if (ev_mpl->parsed()) {
      EvalConfig cfg = g.config(true);
      MplSpec spec{ev_k, parse_units(ev_xs)};
      ValueWithError v = mpl_eval(spec, cfg);
      results = value_payload(v);
      results["kind"] = "mpl";
      results["k"] = ev_k;
      json xs = json::array();
      for (const auto& u : spec.x) xs.push_back(u.serialize());
      results["xs"] = xs;
    } else if (ev_amzv->parsed()) {
      EvalConfig cfg = g.config(true);
      MplSpec spec = parse_amzv(ev_idx);
      ValueWithError v = mpl_eval(spec, cfg);
      results = value_payload(v);
      results["kind"] = "amzv";
      results["idx"] = ev_idx;
      results["k"] = spec.k;
      json xs = json::array();
      for (const auto& u : spec.x) xs.push_back(u.serialize());
      results["xs"] = xs;
      std::string ke, xe;
      for (size_t i = 0; i < spec.k.size(); ++i) {
        if (i) ke += ',', xe += ',';
        ke += std::to_string(spec.k[i]);
        xe += short_unit(spec.x[i]);
      }
      results["spec_echo"] = "k=(" + ke + "), x=(" + xe + ")";
    } else if (ev_esum->parsed()) {
      EvalConfig cfg = g.config(true);
      EulerSumSpec spec;
      spec.p = ev_ps;
      spec.x = parse_units(ev_xs);
      spec.q = ev_q;
      spec.outer = ev_x.empty() ? UnitParam() : UnitParam::parse(ev_x);
      ValueWithError v = euler_sum_eval(spec, cfg);
      results = value_payload(v);
      results["kind"] = "eulersum";
      results["p"] = ev_ps;
      json xs = json::array();
      for (const auto& u : spec.x) xs.push_back(u.serialize());
      results["xs"] = xs;
      results["q"] = ev_q;
      results["x"] = spec.outer.serialize();
    } else if (id_list->parsed()) {
      json list = json::array();
      for (const IdentityRecord& r : identity_registry()) {
        json e;
        e["id"] = r.id;
        e["title"] = r.title;
        e["depth"] = r.depth;
        e["int_params"] = r.int_params;
        e["unit_params"] = r.unit_params;
        e["has_alternate"] = r.has_alternate;
        e["notes"] = r.notes;
        list.push_back(e);
      }
      results["kind"] = "identity_list";
      results["count"] = list.size();
      results["identities"] = list;
    } else if (id_check->parsed()) {
      EvalConfig cfg = g.config(false);
      IdentityCheck c =
          check_identity(id_id, parse_identity_params(id_params), cfg, g.tol);
      results = check_payload(c);
      results["kind"] = "identity_check";
      pass = c.pass;
    } else if (id_sweep->parsed()) {
      EvalConfig cfg = g.config(false);
      SweepResult s = sweep_identity(id_id, g.seed, g.count, cfg);
      if (g.tol > 0) {  // strict bar replaces the per-case verdicts
        s.passed = 0;
        for (IdentityCheck& c : s.cases) {
          c.pass = c.abs_diff <= g.tol;
          c.tol_used = g.tol;
          s.passed += c.pass ? 1 : 0;
        }
      }
      results["kind"] = "identity_sweep";
      results["id"] = s.id;
      results["seed"] = s.seed;
      results["requested"] = s.requested;
      results["ran"] = s.ran;
      results["passed"] = s.passed;
      results["terms_used"] = s.terms_used;
      json cases = json::array();
      for (const IdentityCheck& c : s.cases) cases.push_back(check_payload(c));
      results["cases"] = cases;
      pass = (s.passed == s.requested);
    } else if (rs_check->parsed() || rs_decomp->parsed()) {
      EvalConfig cfg = g.config(true);
      KernelSpec spec;
      spec.variant = rs_kernel == "F" ? KernelVariant::F : KernelVariant::G;
      spec.p = rs_p;
      spec.args = parse_units(rs_xs);
      spec.q = rs_q;
      if (spec.variant == KernelVariant::F) {
        if (rs_x.empty())
          throw domain_error("kernel F requires --x (simple-pole argument)");
        spec.phi_arg = UnitParam::parse(rs_x);
      } else if (!rs_x.empty()) {
        throw domain_error("--x only applies to kernel F");
      }
      validate_kernel(spec);
      results["kernel"] = rs_kernel;
      results["p"] = rs_p;
      json xs = json::array();
      for (const auto& u : spec.args) xs.push_back(u.serialize());
      results["xs"] = xs;
      results["q"] = rs_q;
      if (spec.variant == KernelVariant::F)
        results["x"] = spec.phi_arg.serialize();

      if (rs_check->parsed()) {
        ResidueReport rep = residue_total(spec, g.nmax, cfg);
        results["kind"] = "residue_check";
        results["raw_total"] = cpair(rep.raw_total);
        results["extrapolated"] = cpair(rep.extrapolated);
        results["abs_extrapolated"] = std::abs(rep.extrapolated);
        results["n_max"] = rep.n_max;
        results["fold"] = rep.fold;
        results["target_tol"] = rep.target_tol;
        results["pass"] = rep.pass;
        json pp = json::array();
        for (size_t i = 0; i < rep.per_pole.size() && i < 16; ++i)
          pp.push_back(json::array({rep.per_pole[i].first,
                                    rep.per_pole[i].second.real(),
                                    rep.per_pole[i].second.imag()}));
        results["per_pole"] = pp;
        pass = rep.pass;
      } else {
        ParityReport rep = parity_decompose(spec, g.nmax, cfg);
        const double bar = g.tol > 0 ? g.tol : 1e-5;
        results["kind"] = "residue_decompose";
        results["forward"] = cpair(rep.forward);
        results["mirror"] = cpair(rep.mirror);
        results["remainder"] = cpair(rep.remainder);
        results["total"] = cpair(rep.total);
        results["abs_total"] = std::abs(rep.total);
        results["n_max"] = rep.n_max;
        results["fold"] = rep.fold;
        results["tol"] = bar;
        results["pass"] = std::abs(rep.total) <= bar;
        pass = std::abs(rep.total) <= bar;
      }
    }

    if (!cache::save_from_memo(cache::resolve_path(g.cache_path), &warn) &&
        !warn.empty())
      std::fprintf(stderr, "warning: %s\n", warn.c_str());
  } catch (const domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const convergence_error& e) {
    std::fprintf(stderr,
                 "convergence failure: %s (best estimate %.17g%+.17gi, "
                 "estimated error %.3e)\n",
                 e.what(), e.best_estimate.real(), e.best_estimate.imag(),
                 e.est_err);
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }

  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                t0)
          .count();

  json report;
  report["command"] = cmdline;
  report["config"] = g.echo();
  report["results"] = results;
  report["wall_time_ms"] = wall_ms;
  report["summary"] = json{{"pass", pass}, {"exit_code", pass ? 0 : 1}};

  if (g.json_out) {
    std::printf("%s\n", report.dump(2).c_str());
    return pass ? 0 : 1;
  }

  const std::string kind =
      results.contains("kind") ? results["kind"].get<std::string>() : "";
  if (kind == "polylog" || kind == "zetan" || kind == "mpl" ||
      kind == "amzv" || kind == "eulersum") {
    if (results.contains("spec_echo"))
      std::printf("%s\n", results["spec_echo"].get<std::string>().c_str());
    human_value(results);
  } else if (kind == "identity_list") {
    for (const auto& e : results["identities"]) {
      std::printf("%-10s depth %d  %s%s\n",
                  e["id"].get<std::string>().c_str(), e["depth"].get<int>(),
                  e["title"].get<std::string>().c_str(),
                  e["has_alternate"].get<bool>() ? "  [alternate reading]"
                                                 : "");
      for (const auto& n : e["notes"])
        std::printf("           note: %s\n", n.get<std::string>().c_str());
    }
    std::printf("%zu identities\n",
                static_cast<size_t>(results["count"].get<long long>()));
  } else if (kind == "identity_check") {
    human_check(results);
  } else if (kind == "identity_sweep") {
    std::printf("%s: %d/%d passed (seed %llu, %llu terms summed)\n",
                results["id"].get<std::string>().c_str(),
                results["passed"].get<int>(), results["ran"].get<int>(),
                static_cast<unsigned long long>(
                    results["seed"].get<unsigned long long>()),
                static_cast<unsigned long long>(
                    results["terms_used"].get<unsigned long long>()));
    for (const auto& c : results["cases"]) human_check(c, "  ");
  } else if (kind == "residue_check") {
    std::printf("raw total          = %s\n",
                cstr(results["raw_total"]).c_str());
    std::printf("extrapolated total = %s  (|.| = %.3e)\n",
                cstr(results["extrapolated"]).c_str(),
                results["abs_extrapolated"].get<double>());
    std::printf("scanned |pole| <= %lld (fold %lld), tol %.1e: %s\n",
                results["n_max"].get<long long>(),
                results["fold"].get<long long>(),
                results["target_tol"].get<double>(),
                results["pass"].get<bool>() ? "PASS" : "FAIL");
  } else if (kind == "residue_decompose") {
    std::printf("forward   = %s\n", cstr(results["forward"]).c_str());
    std::printf("mirror    = %s\n", cstr(results["mirror"]).c_str());
    std::printf("remainder = %s\n", cstr(results["remainder"]).c_str());
    std::printf("total     = %s  (|.| = %.3e, tol %.1e): %s\n",
                cstr(results["total"]).c_str(),
                results["abs_total"].get<double>(),
                results["tol"].get<double>(),
                results["pass"].get<bool>() ? "PASS" : "FAIL");
  }
  std::printf("[%.1f ms] %s\n", wall_ms, pass ? "ok" : "FAILED");
  return pass ? 0 : 1;
}
