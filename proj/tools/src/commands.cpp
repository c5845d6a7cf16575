#include "lambdaes_cli/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "lambdaes/measures.hpp"

namespace lambdaes::cli {
namespace {

Json extended(const ExtendedReal& v) { return v.to_double(); }

std::string status_name(LPStatus s) { return to_string(s); }

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
  } else {
    write_file_atomic(cfg.out_path, text);
  }
}

int do_compute(const RunConfig& cfg, std::ostream& out) {
  if (cfg.dist_path.empty() || cfg.lambda_path.empty()) throw ParseError("compute needs --dist and --lambda");
  auto d = parse_distribution_csv(read_file(cfg.dist_path));
  auto lambda = parse_lambda_json(read_file(cfg.lambda_path));
  emit(cfg, dump_json(compute_report(d, lambda, cfg.levels, cfg.certificate_tol)) + "\n", out);
  return kOk;
}

int do_curve(const RunConfig& cfg, std::ostream& out) {
  if (cfg.dist_path.empty() || cfg.lambda_path.empty()) throw ParseError("curve needs --dist and --lambda");
  auto d = parse_distribution_csv(read_file(cfg.dist_path));
  auto lambda = parse_lambda_json(read_file(cfg.lambda_path));
  emit(cfg, curve_csv(d, lambda, cfg.grid), out);
  return kOk;
}

int do_optimize(const RunConfig& cfg, std::ostream& out) {
  if (cfg.scenarios_path.empty() || cfg.lambda_path.empty())
    throw ParseError("optimize needs --scenarios and --lambda");
  auto s = parse_scenarios_csv(read_file(cfg.scenarios_path));
  auto lambda = parse_lambda_json(read_file(cfg.lambda_path));
  FeasibleSet set = SimplexSet{};
  if (cfg.feasible == "box") {
    if (!cfg.box) throw ParseError("--feasible box needs box bounds in --config");
    if (cfg.box->lo.size() != s.assets() || cfg.box->hi.size() != s.assets()) {
      throw ParseError("box bounds do not match the asset count");
    }
    set = *cfg.box;
  } else if (cfg.feasible != "simplex") {
    throw ParseError("--feasible must be simplex or box");
  }
  double objective_level = cfg.levels_given ? cfg.levels.front() : 0.0;
  auto report = optimize_report(s, lambda, set, cfg.ell, objective_level);
  emit(cfg, dump_json(report) + "\n", out);
  return report["status"] == "optimal" ? kOk : kInfeasible;
}

int do_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<PropertyReport> reports;
  try {
    reports = run_harness(cfg.seed, cfg.only);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  bool ok = true;
  for (const auto& r : reports) {
    ok = ok && r.passed();
    out << (r.passed() ? "pass " : "FAIL ") << r.name << (r.expect_violation ? " (counterexample)" : "")
        << "  trials=" << r.trials << " failures=" << r.failures << " mismatches=" << r.mismatches
        << (r.skipped ? " skipped" : "") << '\n';
  }
  auto report = verify_report(reports, cfg.seed);
  if (!cfg.out_path.empty()) write_file_atomic(cfg.out_path, dump_json(report) + "\n");
  if (!ok) err << "verify: at least one check failed\n";
  return ok ? kOk : kPropertyFailure;
}

}  // namespace

void apply_config_json(std::string_view text, RunConfig& cfg) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config: expected an object");
  for (const auto& [k, v] : j.items()) {
    if (k == "box") {
      BoxSet box;
      try {
        box.lo = v.at("lo").get<std::vector<double>>();
        box.hi = v.at("hi").get<std::vector<double>>();
        if (v.contains("budget")) box.budget = v.at("budget").get<bool>();
      } catch (const Json::exception& e) {
        throw ParseError(std::string("config: box: ") + e.what());
      }
      if (box.lo.size() != box.hi.size()) throw ParseError("config: box lo/hi lengths differ");
      cfg.box = std::move(box);
    } else if (k == "certificate_tol") {
      if (!v.is_number() || !(v.get<double>() > 0.0)) throw ParseError("config: certificate_tol must be positive");
      cfg.certificate_tol = v.get<double>();
    } else {
      throw ParseError("config: unknown key '" + k + "'");
    }
  }
}

Json compute_report(const Distribution& d, const LambdaSpec& lambda, const std::vector<double>& levels,
                    double certificate_tol) {
  Json var = Json::array();
  Json var_plus = Json::array();
  Json es_levels = Json::array();
  for (double a : levels) {
    var.push_back(extended(var_left(d, a)));
    var_plus.push_back(extended(var_right(d, a)));
    es_levels.push_back(es(d, a));
  }
  auto r = lambda_es(d, lambda);
  Json j;
  j["lambda"] = lambda_to_json(lambda);
  j["levels"] = levels;
  j["var"] = var;
  j["var_plus"] = var_plus;
  j["es_at_levels"] = es_levels;
  j["lambda_var"] = extended(lambda_var(d, lambda));
  j["lambda_var_plus"] = extended(lambda_var_right(d, lambda));
  j["lambda_es"] = r.value;
  j["crossing_certificate"] = {{"x_star", r.cert.x_star},
                               {"es_at_left_limit", r.cert.left_value},
                               {"es_at_right_limit", r.cert.right_value},
                               {"holds", r.cert.holds(certificate_tol)}};
  return j;
}

std::string curve_csv(const Distribution& d, const LambdaSpec& lambda, const std::optional<GridSpec>& grid) {
  GridSpec g = grid.value_or(GridSpec{d.ess_inf() - 1.0, d.ess_sup() + 1.0, 401});
  const double x_star = lambda_es(d, lambda).value;
  std::vector<double> xs;
  for (std::size_t i = 0; i < g.n; ++i) {
    xs.push_back(g.n == 1 ? g.lo : g.lo + (g.hi - g.lo) * static_cast<double>(i) / static_cast<double>(g.n - 1));
  }
  if (!std::binary_search(xs.begin(), xs.end(), x_star))
    xs.insert(std::upper_bound(xs.begin(), xs.end(), x_star), x_star);
  std::ostringstream os;
  os << "x,es_level,min_es_x,is_x_star\n";
  bool flagged = false;
  for (double x : xs) {
    double e = es(d, lambda(x));
    bool star = !flagged && x == x_star;
    flagged = flagged || star;
    os << format_number(x) << ',' << format_number(e) << ',' << format_number(std::min(e, x)) << ',' << (star ? 1 : 0)
       << '\n';
  }
  return os.str();
}

Json optimize_report(const ScenarioMatrix& s, const LambdaSpec& lambda, const FeasibleSet& set,
                     const std::optional<double>& ell, double objective_level) {
  Json j;
  j["assets"] = s.names();
  if (ell) {
    auto r = min_objective_with_lambda_es_constraint(s, objective_level, lambda, *ell, set);
    j["mode"] = "constrained";
    j["status"] = status_name(r.status);
    j["objective_level"] = objective_level;
    j["ell"] = *ell;
    j["level"] = r.level;
    if (r.status == LPStatus::optimal) {
      j["theta"] = r.theta;
      j["value"] = r.value;
      j["lambda_es_at_theta"] = lambda_es(s.portfolio_law(r.theta), lambda).value;
    }
    return j;
  }
  auto r = min_portfolio_lambda_es(s, lambda, set);
  j["mode"] = "min_lambda_es";
  j["status"] = status_name(r.status);
  if (r.status == LPStatus::optimal) {
    j["theta"] = r.theta;
    j["value"] = r.value;
    j["x_star"] = r.x_star;
    j["reevaluated_lambda_es"] = lambda_es(s.portfolio_law(r.theta), lambda).value;
    if (r.golden_value) j["golden_value"] = *r.golden_value;
  }
  j["lp_solves"] = r.lp_solves;
  return j;
}

Json verify_report(const std::vector<PropertyReport>& reports, std::uint64_t seed) {
  Json list = Json::array();
  bool ok = true;
  for (const auto& r : reports) {
    Json w = Json::object();
    for (const auto& [k, v] : r.witness) {
      if (!w.contains(k)) w[k] = v;
    }
    Json e;
    e["name"] = r.name;
    e["passed"] = r.passed();
    e["trials"] = r.trials;
    e["failures"] = r.failures;
    e["mismatches"] = r.mismatches;
    e["seed"] = r.seed;
    e["expect_violation"] = r.expect_violation;
    if (r.skipped) e["skipped"] = true;
    if (!r.note.empty()) e["note"] = r.note;
    if (!w.empty()) e["witness"] = w;
    list.push_back(e);
    ok = ok && r.passed();
  }
  Json j;
  j["seed"] = seed;
  j["passed"] = ok;
  j["reports"] = list;
  return j;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Lambda-ES risk measures: compute, curve, optimize, verify"};
  app.require_subcommand(1);
  std::string levels;
  std::string grid;
  double ell = 0.0;

  auto* compute = app.add_subcommand("compute", "risk report for a distribution");
  auto* curve = app.add_subcommand("curve", "ES_{Lambda(x)} curve as CSV");
  auto* optimize = app.add_subcommand("optimize", "portfolio optimisation over scenarios");
  auto* verify = app.add_subcommand("verify", "run the property harness");
  for (auto* sub : {compute, curve}) {
    sub->add_option("--dist", cfg.dist_path, "value,prob CSV")->required();
    sub->add_option("--lambda", cfg.lambda_path, "Lambda JSON")->required();
  }
  compute->add_option("--levels", levels, "comma-separated levels in [0,1]");
  curve->add_option("--grid", grid, "lo:hi:n");
  optimize->add_option("--scenarios", cfg.scenarios_path, "scenario loss CSV")->required();
  optimize->add_option("--lambda", cfg.lambda_path, "Lambda JSON")->required();
  optimize->add_option("--feasible", cfg.feasible, "simplex or box");
  auto* ell_opt = optimize->add_option("--ell", ell, "constraint mode: lambda_es <= ell");
  optimize->add_option("--levels", levels, "objective level for constraint mode");
  verify->add_option("--seed", cfg.seed, "harness seed");
  verify->add_option("--only", cfg.only, "run a single check by name");
  for (auto* sub : {compute, curve, optimize, verify}) {
    sub->add_option("--out", cfg.out_path, "output path (stdout if omitted)");
    sub->add_option("--config", cfg.config_path, "JSON with box bounds and tolerances");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    if (!levels.empty()) {
      cfg.levels = parse_levels(levels);
      cfg.levels_given = true;
    }
    if (!grid.empty()) cfg.grid = parse_grid(grid);
    if (*ell_opt) cfg.ell = ell;
    if (!cfg.config_path.empty()) apply_config_json(read_file(cfg.config_path), cfg);
    if (cfg.command == "compute") return do_compute(cfg, out);
    if (cfg.command == "curve") return do_curve(cfg, out);
    if (cfg.command == "optimize") return do_optimize(cfg, out);
    return do_verify(cfg, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }
}

}  // namespace lambdaes::cli
