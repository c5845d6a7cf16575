#include <gtest/gtest.h>

#include "lambdaes/lp.hpp"

using namespace lambdaes;

TEST(Lp, SmallMaximisation) {
  // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6, x <= 3: optimum (3, 1), value 11.
  LPProblem p;
  p.c = {-3.0, -2.0};
  p.add_row({1.0, 1.0}, RowSense::le, 4.0);
  p.add_row({1.0, 3.0}, RowSense::le, 6.0);
  p.add_row({1.0, 0.0}, RowSense::le, 3.0);
  auto s = solve_lp(p);
  ASSERT_EQ(s.status, LPStatus::optimal);
  EXPECT_NEAR(s.objective, -11.0, 1e-12);
  EXPECT_NEAR(s.x[0], 3.0, 1e-12);
  EXPECT_NEAR(s.x[1], 1.0, 1e-12);
  EXPECT_LE(lp_residual(p, s.x), 1e-12);
}

TEST(Lp, EqualityAndGreaterRows) {
  // min x + 2y s.t. x + y = 1, x >= 0.25 (as a row), y >= 0.1.
  LPProblem p;
  p.c = {1.0, 2.0};
  p.add_row({1.0, 1.0}, RowSense::eq, 1.0);
  p.add_row({1.0, 0.0}, RowSense::ge, 0.25);
  p.add_row({0.0, 1.0}, RowSense::ge, 0.1);
  auto s = solve_lp(p);
  ASSERT_EQ(s.status, LPStatus::optimal);
  EXPECT_NEAR(s.objective, 1.1, 1e-12);
}

TEST(Lp, NegativeRightHandSide) {
  // -x <= -2 means x >= 2.
  LPProblem p;
  p.c = {1.0};
  p.add_row({-1.0}, RowSense::le, -2.0);
  auto s = solve_lp(p);
  ASSERT_EQ(s.status, LPStatus::optimal);
  EXPECT_NEAR(s.x[0], 2.0, 1e-12);
}

TEST(Lp, Infeasible) {
  LPProblem p;
  p.c = {1.0, 1.0};
  p.add_row({1.0, 1.0}, RowSense::le, 1.0);
  p.add_row({1.0, 1.0}, RowSense::ge, 2.0);
  EXPECT_EQ(solve_lp(p).status, LPStatus::infeasible);
}

TEST(Lp, Unbounded) {
  LPProblem p;
  p.c = {-1.0, 0.0};
  p.add_row({1.0, -1.0}, RowSense::le, 1.0);
  EXPECT_EQ(solve_lp(p).status, LPStatus::unbounded);
}

TEST(Lp, RedundantEqualities) {
  LPProblem p;
  p.c = {1.0, 1.0};
  p.add_row({1.0, 1.0}, RowSense::eq, 1.0);
  p.add_row({2.0, 2.0}, RowSense::eq, 2.0);
  p.add_row({1.0, 0.0}, RowSense::ge, 0.3);
  auto s = solve_lp(p);
  ASSERT_EQ(s.status, LPStatus::optimal);
  EXPECT_NEAR(s.objective, 1.0, 1e-12);
}

TEST(Lp, BealeCyclingExample) {
  // Cycles under the textbook largest-coefficient rule; Bland's rule terminates.
  LPProblem p;
  p.c = {-0.75, 20.0, -0.5, 6.0};
  p.add_row({0.25, -8.0, -1.0, 9.0}, RowSense::le, 0.0);
  p.add_row({0.5, -12.0, -0.5, 3.0}, RowSense::le, 0.0);
  p.add_row({0.0, 0.0, 1.0, 0.0}, RowSense::le, 1.0);
  auto s = solve_lp(p);
  ASSERT_EQ(s.status, LPStatus::optimal);
  EXPECT_NEAR(s.objective, -1.25, 1e-12);
}

TEST(Lp, IterationLimit) {
  LPProblem p;
  p.c = {-3.0, -2.0};
  p.add_row({1.0, 1.0}, RowSense::le, 4.0);
  p.add_row({1.0, 3.0}, RowSense::le, 6.0);
  LPOptions opt;
  opt.max_iterations = 0;
  EXPECT_EQ(solve_lp(p, opt).status, LPStatus::iteration_limit);
}
