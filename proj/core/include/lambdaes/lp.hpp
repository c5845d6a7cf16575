#pragma once

#include <cstddef>
#include <vector>

namespace lambdaes {

enum class RowSense { le, ge, eq };

// minimize c'x subject to A x (sense) b, x >= 0. A is row-major, dense.
struct LPProblem {
  std::vector<double> c;
  std::vector<std::vector<double>> a;
  std::vector<RowSense> sense;
  std::vector<double> b;

  std::size_t add_row(std::vector<double> row, RowSense s, double rhs);
};

enum class LPStatus { optimal, infeasible, unbounded, iteration_limit };

struct LPSolution {
  LPStatus status = LPStatus::infeasible;
  std::vector<double> x;
  double objective = 0.0;
  std::size_t iterations = 0;
};

struct LPOptions {
  double pivot_tol = 1e-9;
  double feas_tol = 1e-8;
  std::size_t max_iterations = 200000;
};

// Dense two-phase primal simplex with Bland's rule.
LPSolution solve_lp(const LPProblem& p, const LPOptions& opt = {});

// Largest violation of the constraints and nonnegativity at x.
double lp_residual(const LPProblem& p, const std::vector<double>& x);

const char* to_string(LPStatus s);

}  // namespace lambdaes
