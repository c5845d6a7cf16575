#include <gtest/gtest.h>

#include "lambdaes/measures.hpp"
#include "lambdaes/random_laws.hpp"
#include "oracles.hpp"

using namespace lambdaes;

namespace {

Distribution discrete(std::vector<double> v, std::vector<double> p) { return Distribution::discrete(v, p); }
Distribution two_point() { return discrete({0.0, 10.0}, {0.5, 0.5}); }
Distribution demo_law() { return discrete({0.0, 2.0}, {0.5, 0.5}); }
LambdaSpec demo_step() { return LambdaSpec::step({1.0, 1.5}, {0.9, 0.5, 0.2}, Side::right); }

oracle::Atoms atoms_of(const Distribution& d) {
  oracle::Atoms a;
  for (auto [v, p] : d.atoms()) {
    a.v.push_back(v);
    a.p.push_back(p);
  }
  return a;
}

// Frozen from the oracle tests below.
constexpr double kVarLeftHalf = 0.0;
constexpr double kVarRightHalf = 10.0;
constexpr double kEsHalf = 10.0;
constexpr double kEsThreeQuarters = 10.0;
constexpr double kDemoLambdaEs = 1.5;
constexpr double kDemoMidLambdaEs = 1.0;
constexpr double kA1VarX = 1.0;
constexpr double kA1VarY = 0.0;

// Two jump laws with eps = 0.1 and their closed-form CDFs.
Distribution a1_x() {
  return Distribution::piecewise_linear_quantile(
      {{0.0, 0.1, -0.01, 0.0}, {0.1, 0.9, 1.0, 1.08}, {0.9, 1.0, 10.08, 10.09}});
}
Distribution a1_y() {
  return Distribution::piecewise_linear_quantile({{0.0, 0.9, -0.1, -0.01}, {0.9, 1.0, 9.99, 10.0}});
}
double a1_x_cdf(double x) {
  if (x < -0.01) return 0.0;
  if (x < 0.0) return 0.1 * (x + 0.01) / 0.01;
  if (x < 1.0) return 0.1;
  if (x < 1.08) return 0.1 + 0.8 * (x - 1.0) / 0.08;
  if (x < 10.08) return 0.9;
  if (x < 10.09) return 0.9 + 0.1 * (x - 10.08) / 0.01;
  return 1.0;
}
double a1_y_cdf(double x) {
  if (x < -0.1) return 0.0;
  if (x < -0.01) return 0.9 * (x + 0.1) / 0.09;
  if (x < 9.99) return 0.9;
  if (x < 10.0) return 0.9 + 0.1 * (x - 9.99) / 0.01;
  return 1.0;
}
double a1_lambda(double x) { return std::clamp(0.9 - 0.8 * x, 0.1, 1.0); }

}  // namespace

TEST(MeasuresOracle, QuantilesOfTwoPoint) {
  oracle::Atoms a{{0.0, 10.0}, {0.5, 0.5}};
  EXPECT_EQ(oracle::var_scan(a, 0.5), kVarLeftHalf);
  EXPECT_EQ(oracle::var_scan(a, 0.5, true), kVarRightHalf);
}

TEST(MeasuresOracle, EsByMidpointIntegration) {
  auto q = [](double u) { return u <= 0.5 ? 0.0 : 10.0; };
  EXPECT_NEAR(oracle::es_midpoint(q, 0.5, 1000000), kEsHalf, 1e-9);
  EXPECT_NEAR(oracle::es_midpoint(q, 0.75, 1000000), kEsThreeQuarters, 1e-9);
}

TEST(MeasuresOracle, RuGridOnTwoPoint) {
  auto r = oracle::ru_grid({{0.0, 10.0}, {0.5, 0.5}}, 0.5, -1.0, 11.0, 1e-4);
  EXPECT_NEAR(r.value, 10.0, 1e-9);
  EXPECT_NEAR(r.lo, 0.0, 1e-4);
  EXPECT_NEAR(r.hi, 10.0, 1e-4);
}

TEST(MeasuresOracle, DemoStepDenseGrid) {
  auto es_at = [](const oracle::Atoms& a) { return [a](double level) { return oracle::es_tail_sum(a, level); }; };
  auto lambda = [](double x) { return x < 1.0 ? 0.9 : (x < 1.5 ? 0.5 : 0.2); };
  oracle::Atoms d{{0.0, 2.0}, {0.5, 0.5}};
  oracle::Atoms mid{{0.0, 1.0}, {0.5, 0.5}};
  // ES_{Lambda(x)} is 2, 2, 1.25 on the three pieces.
  EXPECT_DOUBLE_EQ(es_at(d)(0.9), 2.0);
  EXPECT_DOUBLE_EQ(es_at(d)(0.5), 2.0);
  EXPECT_DOUBLE_EQ(es_at(d)(0.2), 1.25);
  EXPECT_NEAR(oracle::lambda_es_sup_grid(es_at(d), lambda, -1.0, 3.0, 1e-5), kDemoLambdaEs, 1e-5);
  EXPECT_NEAR(oracle::lambda_es_inf_grid(es_at(d), lambda, -1.0, 3.0, 1e-5), kDemoLambdaEs, 1e-5);
  EXPECT_NEAR(oracle::lambda_es_sup_grid(es_at(mid), lambda, -1.0, 3.0, 1e-5), kDemoMidLambdaEs, 1e-5);
}

TEST(MeasuresOracle, A1LambdaVarGrid) {
  EXPECT_NEAR(oracle::lambda_var_grid(a1_x_cdf, a1_lambda, -1.0, 11.0, 1e-6), kA1VarX, 2e-6);
  EXPECT_NEAR(oracle::lambda_var_grid(a1_y_cdf, a1_lambda, -1.0, 11.0, 1e-6), kA1VarY, 2e-6);
}

TEST(Measures, VarLeft) {
  EXPECT_EQ(var_left(two_point(), 0.5), ExtendedReal(kVarLeftHalf));
  EXPECT_EQ(var_left(two_point(), 0.0), ExtendedReal::neg_inf());
  EXPECT_EQ(var_left(two_point(), 1.0), ExtendedReal(10.0));
  for (double a : {0.1, 0.5, 1.0}) EXPECT_EQ(var_left(Distribution::point_mass(3.0), a), ExtendedReal(3.0));
  EXPECT_THROW(var_left(two_point(), 1.1), std::invalid_argument);
}

TEST(Measures, VarRight) {
  EXPECT_EQ(var_right(two_point(), 0.5), ExtendedReal(kVarRightHalf));
  EXPECT_EQ(var_right(two_point(), 1.0), ExtendedReal::pos_inf());
  EXPECT_EQ(var_right(Distribution::point_mass(3.0), 0.0), ExtendedReal(3.0));
  EXPECT_THROW(var_right(two_point(), -0.1), std::invalid_argument);
}

TEST(Measures, Es) {
  EXPECT_DOUBLE_EQ(es(two_point(), 0.0), 5.0);
  EXPECT_DOUBLE_EQ(es(two_point(), 0.5), kEsHalf);
  EXPECT_DOUBLE_EQ(es(two_point(), 0.75), kEsThreeQuarters);
  EXPECT_DOUBLE_EQ(es(two_point(), 1.0), 10.0);
}

TEST(Measures, EsRu) {
  auto r = es_ru(two_point(), 0.5);
  EXPECT_DOUBLE_EQ(r.value, 10.0);
  EXPECT_EQ(r.argmin_lo, ExtendedReal(0.0));
  EXPECT_EQ(r.argmin_hi, ExtendedReal(10.0));
  auto top = es_ru(two_point(), 1.0);
  EXPECT_DOUBLE_EQ(top.value, 10.0);
  EXPECT_EQ(top.argmin_lo, ExtendedReal(10.0));
  EXPECT_EQ(top.argmin_hi, ExtendedReal(10.0));
  auto c = es_ru(Distribution::point_mass(2.5), 0.3);
  EXPECT_DOUBLE_EQ(c.value, 2.5);
  EXPECT_EQ(c.argmin_lo, ExtendedReal(2.5));
  EXPECT_EQ(c.argmin_hi, ExtendedReal(2.5));
}

TEST(Measures, EsMatchesOraclesOnRandomLaws) {
  gen::Rng rng(31);
  for (int t = 0; t < 200; ++t) {
    auto d = gen::discrete(rng, 7);
    auto a = atoms_of(d);
    for (int k = 0; k <= 20; ++k) {
      double alpha = k / 20.0;
      ASSERT_NEAR(es(d, alpha), oracle::es_tail_sum(a, alpha), 1e-12);
      if (k > 0) ASSERT_EQ(var_left(d, alpha).value(), oracle::var_scan(a, alpha));
      if (k < 20) ASSERT_EQ(var_right(d, alpha).value(), oracle::var_scan(a, alpha, true));
    }
  }
}

TEST(Measures, EsOnContinuousLawMatchesMidpointRule) {
  auto d = a1_x();
  auto q = [&](double u) { return d.quantile_left(u); };
  for (double alpha : {0.0, 0.05, 0.3, 0.9, 0.95}) {
    // The quantile jumps by up to 9, so the rule is only good to about 9 / n.
    EXPECT_NEAR(es(d, alpha), oracle::es_midpoint(q, alpha, 200000), 1e-4);
  }
}

TEST(Measures, LambdaVar) {
  gen::Rng rng(32);
  for (int t = 0; t < 50; ++t) {
    auto d = gen::law(rng);
    double alpha = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    EXPECT_EQ(lambda_var(d, LambdaSpec::constant(alpha)), var_left(d, alpha));
  }
  auto lambda = LambdaSpec::clamped_linear(-0.8, 0.9, 0.1, 1.0);
  EXPECT_NEAR(lambda_var(a1_x(), lambda).value(), kA1VarX, 1e-12);
  EXPECT_NEAR(lambda_var(a1_y(), lambda).value(), kA1VarY, 1e-12);
  EXPECT_EQ(lambda_var(demo_law(), demo_step()), ExtendedReal(1.0));
  EXPECT_EQ(lambda_var_right(demo_law(), demo_step()), ExtendedReal(1.5));
  EXPECT_EQ(lambda_var_right(demo_law(), LambdaSpec::constant(1.0)), ExtendedReal::pos_inf());
}

TEST(Measures, LambdaVarMatchesGridOracle) {
  gen::Rng rng(33);
  for (int t = 0; t < 200; ++t) {
    auto d = gen::law(rng);
    auto lambda = gen::any(rng);
    auto v = lambda_var(d, lambda);
    ASSERT_TRUE(v.is_finite());
    double g = oracle::lambda_var_grid([&](double x) { return d.cdf(x); }, lambda, -7.0, 7.0, 1e-4);
    ASSERT_GE(g, v.value() - 1e-12) << t;
    ASSERT_LE(g, v.value() + 1e-4 + 1e-12) << t;
  }
}

TEST(Measures, LambdaEs) {
  gen::Rng rng(34);
  for (int t = 0; t < 50; ++t) {
    auto d = gen::law(rng);
    double alpha = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    EXPECT_NEAR(lambda_es(d, LambdaSpec::constant(alpha)).value, es(d, alpha), 1e-12);
    EXPECT_NEAR(lambda_es(Distribution::point_mass(alpha * 4.0), gen::any(rng)).value, alpha * 4.0, 1e-12);
  }
  auto r = lambda_es(demo_law(), demo_step());
  EXPECT_DOUBLE_EQ(r.value, kDemoLambdaEs);
  EXPECT_TRUE(r.cert.holds());
  EXPECT_DOUBLE_EQ(r.cert.left_value, 2.0);
  EXPECT_DOUBLE_EQ(r.cert.right_value, 1.25);
  EXPECT_DOUBLE_EQ(lambda_es(discrete({0.0, 1.0}, {0.5, 0.5}), demo_step()).value, kDemoMidLambdaEs);
}

TEST(Measures, LambdaEsInfForm) {
  EXPECT_DOUBLE_EQ(lambda_es_inf_form(demo_law(), demo_step()), kDemoLambdaEs);
  EXPECT_DOUBLE_EQ(lambda_es_inf_form(two_point(), LambdaSpec::constant(0.3)), es(two_point(), 0.3));
  EXPECT_DOUBLE_EQ(lambda_es_inf_form(Distribution::point_mass(-2.0), demo_step()), -2.0);
}

TEST(Measures, LambdaEsMatchesGridOracleAndBounds) {
  gen::Rng rng(35);
  for (int t = 0; t < 200; ++t) {
    auto d = gen::discrete(rng, 6);
    auto lambda = gen::any(rng);
    auto a = atoms_of(d);
    double v = lambda_es(d, lambda).value;
    double g = oracle::lambda_es_sup_grid([&](double level) { return oracle::es_tail_sum(a, level); }, lambda, -7.0,
                                          7.0, 1e-3);
    ASSERT_LE(g, v + 1e-12) << t;
    ASSERT_GE(g, v - 1e-3 - 1e-12) << t;
    ASSERT_GE(v, d.mean() - 1e-12);
    ASSERT_LE(v, d.ess_sup() + 1e-12);
    ASSERT_GE(ExtendedReal(v + 1e-12), lambda_var(d, lambda));
  }
}

TEST(Measures, BisectionPath) {
  EXPECT_NEAR(lambda_es_bisection(demo_law(), demo_step()), kDemoLambdaEs, 1e-10);
  gen::Rng rng(36);
  for (int t = 0; t < 200; ++t) {
    auto d = gen::law(rng);
    auto lambda = gen::any(rng);
    ASSERT_NEAR(lambda_es_bisection(d, lambda), lambda_es(d, lambda).value, 1e-8);
  }
}

TEST(Measures, CertificateOnRandomPairs) {
  gen::Rng rng(37);
  for (int t = 0; t < 300; ++t) {
    auto d = gen::law(rng);
    auto lambda = gen::any(rng);
    auto r = lambda_es(d, lambda);
    ASSERT_TRUE(r.cert.holds()) << t;
    ASSERT_NEAR(r.value, lambda_es_inf_form(d, lambda), 1e-10);
  }
}

TEST(Measures, TailInvariance) {
  auto lowered = discrete({-5.0, 10.0}, {0.5, 0.5});
  EXPECT_TRUE(is_tail_measure_invariant(two_point(), LambdaSpec::constant(0.9), 0.5, lowered));
  EXPECT_FALSE(is_tail_measure_invariant(two_point(), LambdaSpec::constant(0.3), 0.5, lowered));
  EXPECT_TRUE(is_tail_measure_invariant(two_point(), LambdaSpec::constant(0.3), 0.5, two_point()));
  auto moved_tail = discrete({0.0, 11.0}, {0.5, 0.5});
  EXPECT_THROW(is_tail_measure_invariant(two_point(), LambdaSpec::constant(0.9), 0.5, moved_tail),
               std::invalid_argument);
}

TEST(Measures, LambdaMonotonicity) {
  gen::Rng rng(38);
  for (int t = 0; t < 200; ++t) {
    auto d = gen::law(rng);
    auto lo = gen::step(rng, Side::right, 0.0, 0.6);
    auto s = std::get<StepLambda>(lo.variant());
    for (double& v : s.values) v += 0.3;
    ASSERT_LE(lambda_es(d, lo).value, lambda_es(d, LambdaSpec(s)).value + 1e-12);
  }
}
