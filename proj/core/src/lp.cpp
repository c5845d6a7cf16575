#include "lambdaes/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lambdaes {

std::size_t LPProblem::add_row(std::vector<double> row, RowSense s, double rhs) {
  a.push_back(std::move(row));
  sense.push_back(s);
  b.push_back(rhs);
  return a.size() - 1;
}

const char* to_string(LPStatus s) {
  switch (s) {
    case LPStatus::optimal:
      return "optimal";
    case LPStatus::infeasible:
      return "infeasible";
    case LPStatus::unbounded:
      return "unbounded";
    case LPStatus::iteration_limit:
      return "iteration_limit";
  }
  return "unknown";
}

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : cols_(cols), t_(rows, std::vector<double>(cols + 1, 0.0)), basis_(rows) {}

  std::vector<double>& row(std::size_t i) { return t_[i]; }
  double rhs(std::size_t i) const { return t_[i][cols_]; }
  std::size_t rows() const { return t_.size(); }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t e, std::vector<double>& obj) {
    auto& pr = t_[r];
    double inv = 1.0 / pr[e];
    for (double& v : pr) v *= inv;
    pr[e] = 1.0;
    auto eliminate = [&](std::vector<double>& other) {
      double f = other[e];
      if (f == 0.0) return;
      for (std::size_t j = 0; j <= cols_; ++j) other[j] -= f * pr[j];
      other[e] = 0.0;
    };
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i != r) eliminate(t_[i]);
    }
    eliminate(obj);
    basis_[r] = e;
  }

  void drop_row(std::size_t i) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
  }

 private:
  std::size_t cols_;
  std::vector<std::vector<double>> t_;
  std::vector<std::size_t> basis_;
};

// Bland's rule on the reduced-cost row obj (entries < -tol are improving).
// Returns the final status of the phase.
LPStatus run_phase(Tableau& t, std::vector<double>& obj, const std::vector<bool>& allowed, const LPOptions& opt,
                   std::size_t& iterations) {
  for (;;) {
    std::size_t e = t.cols();
    for (std::size_t j = 0; j < t.cols(); ++j) {
      if (allowed[j] && obj[j] < -opt.pivot_tol) {
        e = j;
        break;
      }
    }
    if (e == t.cols()) return LPStatus::optimal;
    if (iterations++ >= opt.max_iterations) return LPStatus::iteration_limit;

    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.rows(); ++i) {
      double v = t.row(i)[e];
      if (v > opt.pivot_tol) best = std::min(best, t.rhs(i) / v);
    }
    std::size_t r = t.rows();
    if (std::isfinite(best)) {
      double band = 1e-12 * (1.0 + std::abs(best));
      for (std::size_t i = 0; i < t.rows(); ++i) {
        double v = t.row(i)[e];
        if (v <= opt.pivot_tol || t.rhs(i) / v > best + band) continue;
        if (r == t.rows() || t.basis()[i] < t.basis()[r]) r = i;
      }
    }
    if (r == t.rows()) return LPStatus::unbounded;
    t.pivot(r, e, obj);
  }
}

}  // namespace

LPSolution solve_lp(const LPProblem& p, const LPOptions& opt) {
  const std::size_t n = p.c.size();
  const std::size_t m = p.a.size();
  if (p.sense.size() != m || p.b.size() != m) throw std::invalid_argument("solve_lp: inconsistent row data");
  for (const auto& row : p.a) {
    if (row.size() != n) throw std::invalid_argument("solve_lp: row length mismatch");
  }

  std::vector<RowSense> sense = p.sense;
  std::vector<double> sign(m, 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (p.b[i] < 0) {
      sign[i] = -1.0;
      if (sense[i] == RowSense::le) {
        sense[i] = RowSense::ge;
      } else if (sense[i] == RowSense::ge) {
        sense[i] = RowSense::le;
      }
    }
  }
  std::size_t n_slack = 0;
  std::size_t n_art = 0;
  for (auto s : sense) {
    if (s != RowSense::eq) ++n_slack;
    if (s != RowSense::le) ++n_art;
  }
  const std::size_t cols = n + n_slack + n_art;
  const std::size_t art0 = n + n_slack;

  Tableau t(m, cols);
  std::size_t slack = n;
  std::size_t art = art0;
  for (std::size_t i = 0; i < m; ++i) {
    auto& row = t.row(i);
    for (std::size_t j = 0; j < n; ++j) row[j] = sign[i] * p.a[i][j];
    row[cols] = sign[i] * p.b[i];
    if (sense[i] == RowSense::le) {
      row[slack] = 1.0;
      t.basis()[i] = slack++;
    } else {
      if (sense[i] == RowSense::ge) row[slack++] = -1.0;
      row[art] = 1.0;
      t.basis()[i] = art++;
    }
  }

  LPSolution sol;
  std::vector<bool> allowed(cols, true);

  // Phase 1: minimise the sum of artificials.
  std::vector<double> obj(cols + 1, 0.0);
  for (std::size_t j = art0; j < cols; ++j) obj[j] = 1.0;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    if (t.basis()[i] >= art0) {
      for (std::size_t j = 0; j <= cols; ++j) obj[j] -= t.row(i)[j];
    }
  }
  if (n_art > 0) {
    LPStatus s = run_phase(t, obj, allowed, opt, sol.iterations);
    if (s == LPStatus::iteration_limit) {
      sol.status = s;
      return sol;
    }
    double scale = 1.0;
    for (double v : p.b) scale = std::max(scale, std::abs(v));
    if (-obj[cols] > opt.feas_tol * scale) {
      sol.status = LPStatus::infeasible;
      return sol;
    }
    // Pivot remaining artificials out of the basis; rows where that is
    // impossible are redundant.
    for (std::size_t i = t.rows(); i-- > 0;) {
      if (t.basis()[i] < art0) continue;
      std::size_t e = cols;
      for (std::size_t j = 0; j < art0; ++j) {
        if (std::abs(t.row(i)[j]) > opt.pivot_tol) {
          e = j;
          break;
        }
      }
      if (e == cols) {
        t.drop_row(i);
      } else {
        t.pivot(i, e, obj);
      }
    }
    for (std::size_t j = art0; j < cols; ++j) allowed[j] = false;
  }

  // Phase 2.
  std::fill(obj.begin(), obj.end(), 0.0);
  for (std::size_t j = 0; j < n; ++j) obj[j] = p.c[j];
  for (std::size_t i = 0; i < t.rows(); ++i) {
    std::size_t bj = t.basis()[i];
    double cb = bj < n ? p.c[bj] : 0.0;
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j <= cols; ++j) obj[j] -= cb * t.row(i)[j];
  }
  sol.status = run_phase(t, obj, allowed, opt, sol.iterations);
  if (sol.status != LPStatus::optimal) return sol;

  sol.x.assign(n, 0.0);
  for (std::size_t i = 0; i < t.rows(); ++i) {
    if (t.basis()[i] < n) sol.x[t.basis()[i]] = std::max(0.0, t.rhs(i));
  }
  sol.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.objective += p.c[j] * sol.x[j];
  return sol;
}

double lp_residual(const LPProblem& p, const std::vector<double>& x) {
  double worst = 0.0;
  for (double v : x) worst = std::max(worst, -v);
  for (std::size_t i = 0; i < p.a.size(); ++i) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) lhs += p.a[i][j] * x[j];
    double d = lhs - p.b[i];
    switch (p.sense[i]) {
      case RowSense::le:
        worst = std::max(worst, d);
        break;
      case RowSense::ge:
        worst = std::max(worst, -d);
        break;
      case RowSense::eq:
        worst = std::max(worst, std::abs(d));
        break;
    }
  }
  return worst;
}

}  // namespace lambdaes
