#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lambdaes/properties.hpp"
#include "lambdaes_cli/io.hpp"

namespace lambdaes::cli {

enum ExitCode : int { kOk = 0, kParseError = 2, kInfeasible = 3, kPropertyFailure = 4 };

inline const std::vector<double> kDefaultLevels{0.5, 0.9, 0.95, 0.99};

struct RunConfig {
  std::string command;
  std::string dist_path;
  std::string scenarios_path;
  std::string lambda_path;
  std::string config_path;
  std::vector<double> levels = kDefaultLevels;
  bool levels_given = false;
  std::optional<double> ell;
  std::string feasible = "simplex";
  std::string out_path;
  std::uint64_t seed = kDefaultSeed;
  std::optional<GridSpec> grid;
  std::string only;
  // From --config.
  std::optional<BoxSet> box;
  double certificate_tol = 1e-9;
};

// --config file: {"box": {"lo": [...], "hi": [...], "budget": bool}, "certificate_tol": t}
void apply_config_json(std::string_view text, RunConfig& cfg);

Json compute_report(const Distribution& d, const LambdaSpec& lambda, const std::vector<double>& levels,
                    double certificate_tol = 1e-9);
// CSV with columns x, es_level, min_es_x, is_x_star. The default grid has 401
// points over [ess-inf - 1, ess-sup + 1]; the crossing point is always added.
std::string curve_csv(const Distribution& d, const LambdaSpec& lambda, const std::optional<GridSpec>& grid);
// Unconstrained: min lambda_es. With ell: min ES at levels.front() (or the
// mean when no levels are given) subject to lambda_es <= ell.
Json optimize_report(const ScenarioMatrix& s, const LambdaSpec& lambda, const FeasibleSet& set,
                     const std::optional<double>& ell, double objective_level);
Json verify_report(const std::vector<PropertyReport>& reports, std::uint64_t seed);

// Parses argv, runs one subcommand and returns its exit code. Diagnostics
// go to err, summaries (and outputs without --out) to out.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lambdaes::cli
