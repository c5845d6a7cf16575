#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lambdaes/distribution.hpp"
#include "lambdaes/extended_real.hpp"
#include "lambdaes/lambda.hpp"
#include "lambdaes/lp.hpp"

namespace lambdaes {

// losses[j][i] is the loss of asset i in scenario j.
class ScenarioMatrix {
 public:
  ScenarioMatrix(std::vector<std::vector<double>> losses, std::vector<double> probs,
                 std::vector<std::string> names = {});
  static ScenarioMatrix uniform(std::vector<std::vector<double>> losses, std::vector<std::string> names = {});

  std::size_t scenarios() const { return losses_.size(); }
  std::size_t assets() const { return losses_.front().size(); }
  const std::vector<std::vector<double>>& losses() const { return losses_; }
  const std::vector<double>& probs() const { return probs_; }
  const std::vector<std::string>& names() const { return names_; }

  std::vector<double> portfolio_losses(const std::vector<double>& theta) const;
  Distribution portfolio_law(const std::vector<double>& theta) const;

 private:
  std::vector<std::vector<double>> losses_;
  std::vector<double> probs_;
  std::vector<std::string> names_;
};

struct SimplexSet {};
// lo <= theta <= hi componentwise, optionally with sum(theta) = 1.
struct BoxSet {
  std::vector<double> lo;
  std::vector<double> hi;
  bool budget = true;
};
using FeasibleSet = std::variant<SimplexSet, BoxSet>;

// max(a + E(X-a)+ / (1 - Lambda(x)), x) with 0/0 = 0 and positive/0 = +inf.
ExtendedReal t_functional(double a, double x, const Distribution& d, const LambdaSpec& lambda);

struct MinimizeTResult {
  double value;
  double a_star;
  double x_star;
};
// Joint minimiser of the T-functional; Lambda must be right-continuous.
MinimizeTResult minimize_t(const Distribution& d, const LambdaSpec& lambda);

struct ConvexityRegimeReport {
  bool convex_in_a_and_x_vector = true;  // no midpoint violation in (a, X) at fixed x
  bool one_over_one_minus_convex = false;
  bool convex_in_x = true;           // no midpoint violation in x found
  bool x_regime_consistent = false;  // convex_in_x == one_over_one_minus_convex
  bool lambda_constant = false;
  bool ax_quasi_convexity_violation = false;
  bool ax_regime_consistent = false;  // violation found iff Lambda non-constant
  std::vector<std::pair<std::string, double>> witness;

  bool consistent() const { return convex_in_a_and_x_vector && x_regime_consistent && ax_regime_consistent; }
};
ConvexityRegimeReport convexity_regime_report(const LambdaSpec& lambda, const Distribution& d,
                                              std::uint64_t seed = 12345);

// Lambda(ell): lambda_es(Y) <= ell iff es(Y, Lambda(ell)) <= ell. Requires a
// right-continuous Lambda.
double constraint_rewrite(const LambdaSpec& lambda, double ell);

struct CvarLpResult {
  LPStatus status = LPStatus::infeasible;
  std::vector<double> theta;
  double a_star = 0.0;
  double value = 0.0;
  double residual = 0.0;
};
// min over theta in the feasible set of ES_alpha(theta'L) via the RU linear
// program; alpha = 1 switches to min of the maximal scenario loss.
CvarLpResult cvar_lp(const ScenarioMatrix& s, double alpha, const FeasibleSet& set);

struct PortfolioResult {
  LPStatus status = LPStatus::infeasible;
  std::vector<double> theta;
  double value = 0.0;
  double x_star = 0.0;
  std::optional<double> golden_value;  // set when 1/(1-Lambda) is convex
  std::size_t lp_solves = 0;
};
// min over theta of lambda_es(theta'L): per constant piece of Lambda one LP,
// bisection over x on smooth pieces, golden-section cross-check when
// x -> 1/(1-Lambda(x)) is convex.
PortfolioResult min_portfolio_lambda_es(const ScenarioMatrix& s, const LambdaSpec& lambda, const FeasibleSet& set);

struct ConstrainedResult {
  LPStatus status = LPStatus::infeasible;
  std::vector<double> theta;
  double value = 0.0;
  double level = 0.0;  // Lambda(ell)
};
// min ES_{objective_level}(theta'L) subject to lambda_es(theta'L) <= ell,
// solved as one LP after rewriting the constraint at level Lambda(ell).
ConstrainedResult min_objective_with_lambda_es_constraint(const ScenarioMatrix& s, double objective_level,
                                                          const LambdaSpec& lambda, double ell, const FeasibleSet& set);

}  // namespace lambdaes
