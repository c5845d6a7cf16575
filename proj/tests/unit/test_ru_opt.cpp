#include <gtest/gtest.h>

#include <cmath>

#include "lambdaes/measures.hpp"
#include "lambdaes/random_laws.hpp"
#include "lambdaes/ru_opt.hpp"
#include "oracles.hpp"

using namespace lambdaes;

namespace {

constexpr double kStepDemoMinT = 1.5;
constexpr double kTwoAssetEsHalf = 1.5;  // min over theta of ES_0.5 for L = [[1,0],[0,1],[2,2]]

const LambdaSpec& step_demo() {
  static const LambdaSpec s = LambdaSpec::step({1.0, 1.5}, {0.9, 0.5, 0.2});
  return s;
}

Distribution two_point() {
  return Distribution::discrete(std::vector<double>{0.0, 2.0}, std::vector<double>{0.5, 0.5});
}

double portfolio_es(const ScenarioMatrix& s, const std::vector<double>& theta, double alpha) {
  return oracle::es_tail_sum({s.portfolio_losses(theta), s.probs()}, alpha);
}

}  // namespace

TEST(RuOptOracle, StepDemoJointGrid) {
  oracle::Atoms a{{0.0, 2.0}, {0.5, 0.5}};
  auto lam = [](double x) { return x < 1.0 ? 0.9 : (x < 1.5 ? 0.5 : 0.2); };
  double best = oracle::kInf;
  for (double av : oracle::grid(-1.0, 3.0, 2e-3)) {
    for (double x : oracle::grid(-1.0, 3.0, 2e-3)) {
      best = std::min(best, std::max(av + oracle::stop_loss(a, av) / (1.0 - lam(x)), x));
    }
  }
  EXPECT_NEAR(best, kStepDemoMinT, 5e-3);
}

TEST(RuOptOracle, TwoAssetGrid) {
  oracle::Atoms base{{1.0, 0.0, 2.0}, {1.0 / 3, 1.0 / 3, 1.0 / 3}};
  double best = oracle::kInf;
  for (double t : oracle::grid(0.0, 1.0, 1e-3)) {
    base.v = {t, 1.0 - t, 2.0};
    best = std::min(best, oracle::es_tail_sum(base, 0.5));
  }
  EXPECT_NEAR(best, kTwoAssetEsHalf, 1e-9);
}

TEST(RuOpt, TFunctional) {
  auto d = two_point();
  EXPECT_TRUE(t_functional(0.5, 0.0, d, LambdaSpec::constant(1.0)).is_pos_inf());
  EXPECT_EQ(t_functional(2.0, -1.0, d, LambdaSpec::constant(1.0)), ExtendedReal(2.0));
  EXPECT_NEAR(t_functional(0.0, -1e6, d, LambdaSpec::constant(0.5)).value(), es(d, 0.5), 1e-15);
  EXPECT_EQ(t_functional(0.0, 5.0, d, LambdaSpec::constant(0.5)), ExtendedReal(5.0));
  auto c = Distribution::discrete(std::vector<double>{3.0}, std::vector<double>{1.0});
  EXPECT_EQ(t_functional(3.0, 0.0, c, LambdaSpec::constant(1.0)), ExtendedReal(3.0));
}

TEST(RuOpt, MinimizeT) {
  auto r = minimize_t(two_point(), step_demo());
  EXPECT_NEAR(r.value, kStepDemoMinT, 1e-12);
  EXPECT_NEAR(r.x_star, 1.5, 1e-12);
  EXPECT_NEAR(t_functional(r.a_star, r.x_star, two_point(), step_demo()).value(), r.value, 1e-12);
  EXPECT_THROW(minimize_t(two_point(), LambdaSpec::step({1.0}, {0.9, 0.2}, Side::left)), std::invalid_argument);

  gen::Rng rng(51);
  for (int t = 0; t < 200; ++t) {
    auto d = gen::law(rng);
    auto lambda = gen::right_continuous(rng);
    auto m = minimize_t(d, lambda);
    EXPECT_NEAR(m.value, lambda_es(d, lambda).value, 1e-9 * std::max(1.0, std::abs(m.value)));
  }
}

TEST(RuOpt, MinimizeTConstantLevel) {
  gen::Rng rng(52);
  for (int t = 0; t < 100; ++t) {
    auto d = gen::discrete(rng, 8);
    double alpha = std::uniform_real_distribution<double>(0.0, 0.95)(rng);
    auto m = minimize_t(d, LambdaSpec::constant(alpha));
    EXPECT_NEAR(m.value, es(d, alpha), 1e-9);
    EXPECT_GE(m.a_star, var_left(d, alpha).value() - 1e-9);
    EXPECT_LE(m.a_star, var_right(d, alpha).value() + 1e-9);
  }
}

TEST(RuOpt, ConvexityRegimes) {
  auto d = Distribution::discrete(std::vector<double>{-1.0, 0.0, 1.0, 3.0}, std::vector<double>{0.1, 0.4, 0.3, 0.2});
  auto constant = convexity_regime_report(LambdaSpec::constant(0.8), d);
  EXPECT_TRUE(constant.consistent());
  EXPECT_TRUE(constant.one_over_one_minus_convex);
  EXPECT_TRUE(constant.convex_in_x);
  EXPECT_FALSE(constant.ax_quasi_convexity_violation);

  auto logistic = convexity_regime_report(LambdaSpec::logistic(2.0), d);
  EXPECT_TRUE(logistic.consistent());
  EXPECT_TRUE(logistic.one_over_one_minus_convex);
  EXPECT_TRUE(logistic.ax_quasi_convexity_violation);

  auto step = convexity_regime_report(step_demo(), d);
  EXPECT_TRUE(step.consistent());
  EXPECT_FALSE(step.one_over_one_minus_convex);
  EXPECT_FALSE(step.convex_in_x);
  EXPECT_TRUE(step.ax_quasi_convexity_violation);
}

TEST(RuOpt, ConstraintRewrite) {
  EXPECT_DOUBLE_EQ(constraint_rewrite(LambdaSpec::constant(0.7), 3.0), 0.7);
  EXPECT_DOUBLE_EQ(constraint_rewrite(step_demo(), 1.5), 0.2);
  EXPECT_DOUBLE_EQ(constraint_rewrite(step_demo(), 1.2), 0.5);
  EXPECT_THROW(constraint_rewrite(LambdaSpec::step({1.0}, {0.9, 0.2}, Side::left), 0.0), std::invalid_argument);

  gen::Rng rng(53);
  for (int t = 0; t < 300; ++t) {
    auto d = gen::law(rng);
    auto lambda = gen::right_continuous(rng);
    double ell = std::uniform_real_distribution<double>(-6.0, 6.0)(rng);
    double lhs = lambda_es(d, lambda).value;
    double rhs = es(d, constraint_rewrite(lambda, ell));
    if (std::abs(lhs - ell) < 1e-9 || std::abs(rhs - ell) < 1e-9) continue;
    EXPECT_EQ(lhs <= ell, rhs <= ell) << "ell=" << ell;
  }
}

TEST(RuOpt, CvarLpTwoAssets) {
  auto s = ScenarioMatrix::uniform({{1.0, 0.0}, {0.0, 1.0}, {2.0, 2.0}});
  auto r = cvar_lp(s, 0.5, SimplexSet{});
  ASSERT_EQ(r.status, LPStatus::optimal);
  EXPECT_NEAR(r.value, kTwoAssetEsHalf, 1e-4);
  EXPECT_NEAR(portfolio_es(s, r.theta, 0.5), r.value, 1e-7);
  EXPECT_LE(r.residual, 1e-8);
}

TEST(RuOpt, CvarLpEdgeCases) {
  auto one = ScenarioMatrix::uniform({{1.0}, {-2.0}, {4.0}, {0.5}});
  auto r = cvar_lp(one, 0.6, SimplexSet{});
  ASSERT_EQ(r.status, LPStatus::optimal);
  EXPECT_NEAR(r.value, es(one.portfolio_law({1.0}), 0.6), 1e-9);

  auto worst = cvar_lp(ScenarioMatrix::uniform({{1.0, 3.0}, {2.0, 0.0}}), 1.0, SimplexSet{});
  ASSERT_EQ(worst.status, LPStatus::optimal);
  EXPECT_NEAR(worst.value, 1.5, 1e-9);

  auto dup = ScenarioMatrix::uniform({{1.0, 1.0}, {-1.0, -1.0}, {3.0, 3.0}});
  auto rd = cvar_lp(dup, 0.5, SimplexSet{});
  EXPECT_NEAR(rd.value, es(dup.portfolio_law({1.0, 0.0}), 0.5), 1e-9);

  BoxSet box{{0.0, 0.0}, {0.2, 0.2}, true};
  EXPECT_EQ(cvar_lp(dup, 0.5, box).status, LPStatus::infeasible);
}

TEST(RuOpt, CvarLpRandomAgainstGrid) {
  gen::Rng rng(54);
  for (int t = 0; t < 20; ++t) {
    std::vector<std::vector<double>> l(8, std::vector<double>(3));
    for (auto& row : l) row = gen::values(rng, 3);
    auto s = ScenarioMatrix::uniform(l);
    double alpha = std::uniform_real_distribution<double>(0.0, 0.9)(rng);
    auto r = cvar_lp(s, alpha, SimplexSet{});
    ASSERT_EQ(r.status, LPStatus::optimal);
    double best = oracle::kInf;
    oracle::simplex_grid3(60,
                          [&](const std::vector<double>& th) { best = std::min(best, portfolio_es(s, th, alpha)); });
    EXPECT_LE(r.value, best + 1e-9);
    EXPECT_NEAR(r.value, portfolio_es(s, r.theta, alpha), 1e-7);
  }
}

TEST(RuOpt, PortfolioConstantMatchesCvar) {
  auto s = ScenarioMatrix::uniform({{1.0, 0.0}, {0.0, 1.0}, {2.0, 2.0}});
  auto p = min_portfolio_lambda_es(s, LambdaSpec::constant(0.5), SimplexSet{});
  ASSERT_EQ(p.status, LPStatus::optimal);
  EXPECT_NEAR(p.value, kTwoAssetEsHalf, 1e-8);
}

TEST(RuOpt, PortfolioSingleAsset) {
  auto s = ScenarioMatrix::uniform({{0.0}, {2.0}});
  auto p = min_portfolio_lambda_es(s, step_demo(), SimplexSet{});
  ASSERT_EQ(p.status, LPStatus::optimal);
  EXPECT_NEAR(p.value, lambda_es(two_point(), step_demo()).value, 1e-9);
}

TEST(RuOpt, PortfolioAgainstSimplexGrid) {
  gen::Rng rng(55);
  std::vector<LambdaSpec> lambdas = {step_demo(), LambdaSpec::logistic(1.0),
                                     LambdaSpec::clamped_linear(-0.1, 0.6, 0.1, 0.9)};
  for (int t = 0; t < 6; ++t) {
    std::vector<std::vector<double>> l(10, std::vector<double>(3));
    for (auto& row : l) row = gen::values(rng, 3, -2.0, 4.0);
    auto s = ScenarioMatrix::uniform(l);
    const auto& lambda = lambdas[t % lambdas.size()];
    auto p = min_portfolio_lambda_es(s, lambda, SimplexSet{});
    ASSERT_EQ(p.status, LPStatus::optimal);
    double best = oracle::kInf;
    oracle::simplex_grid3(100, [&](const std::vector<double>& th) {
      best = std::min(best, lambda_es(s.portfolio_law(th), lambda).value);
    });
    EXPECT_LE(p.value, best + 1e-7);
    EXPECT_GE(p.value, best - 0.05);
    EXPECT_NEAR(lambda_es(s.portfolio_law(p.theta), lambda).value, p.value, 1e-7);
    if (p.golden_value) EXPECT_NEAR(*p.golden_value, p.value, 1e-6);
  }
}

TEST(RuOpt, ConstrainedModes) {
  auto s = ScenarioMatrix::uniform({{1.0, 0.0}, {0.0, 1.0}, {2.0, 2.0}});
  auto slack = min_objective_with_lambda_es_constraint(s, 0.5, step_demo(), 10.0, SimplexSet{});
  ASSERT_EQ(slack.status, LPStatus::optimal);
  EXPECT_NEAR(slack.value, kTwoAssetEsHalf, 1e-8);
  EXPECT_DOUBLE_EQ(slack.level, 0.2);

  auto none = min_objective_with_lambda_es_constraint(s, 0.5, step_demo(), 0.5, SimplexSet{});
  EXPECT_EQ(none.status, LPStatus::infeasible);

  // Binding: objective is the mean, constraint ES_{0.5} <= 1.5 after rewrite at 1.5.
  auto b = ScenarioMatrix::uniform({{0.0, 1.0}, {3.0, 0.5}, {-1.0, 0.6}, {0.5, 1.2}});
  auto lam = LambdaSpec::constant(0.5);
  double ell = 1.1;
  auto r = min_objective_with_lambda_es_constraint(b, 0.0, lam, ell, SimplexSet{});
  ASSERT_EQ(r.status, LPStatus::optimal);
  double best = oracle::kInf;
  for (double t : oracle::grid(0.0, 1.0, 1e-4)) {
    std::vector<double> th{t, 1.0 - t};
    if (portfolio_es(b, th, 0.5) <= ell) best = std::min(best, portfolio_es(b, th, 0.0));
  }
  EXPECT_NEAR(r.value, best, 1e-3);
  EXPECT_LE(lambda_es(b.portfolio_law(r.theta), lam).value, ell + 1e-8);
}
