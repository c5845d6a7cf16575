#include "lambdaes/ru_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "lambdaes/measures.hpp"

namespace lambdaes {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct LpFailure {
  LPStatus status;
};

void require_right_continuous(const LambdaSpec& lambda, const char* who) {
  if (!lambda.is_right_continuous())
    throw std::invalid_argument(std::string(who) + ": Lambda must be right-continuous");
}

// A risk block in the portfolio LP: ES at `level` (the maximal loss when
// level = 1), used either as the objective or as a constraint <= bound.
struct EsBlock {
  double level;
  std::optional<double> bound;
};

struct BuiltLp {
  LPProblem lp;
  std::vector<double> shift;        // theta = shift + z
  std::vector<std::size_t> a_plus;  // per block
  std::vector<std::size_t> a_minus;
};

BuiltLp build_portfolio_lp(const ScenarioMatrix& s, const FeasibleSet& set, const std::vector<EsBlock>& blocks) {
  const std::size_t n = s.assets();
  const std::size_t m = s.scenarios();
  BuiltLp out;
  out.shift.assign(n, 0.0);
  std::vector<double> width(n, kInf);
  bool budget = true;
  if (const auto* box = std::get_if<BoxSet>(&set)) {
    if (box->lo.size() != n || box->hi.size() != n) throw std::invalid_argument("box bounds: wrong dimension");
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(box->lo[i]) || !std::isfinite(box->hi[i])) {
        throw std::invalid_argument("box bounds must be finite");
      }
      out.shift[i] = box->lo[i];
      width[i] = box->hi[i] - box->lo[i];
      if (width[i] < 0) width[i] = -1.0;  // empty box, reported infeasible by the LP
    }
    budget = box->budget;
  }

  std::size_t nvar = n;
  for (const auto& b : blocks) nvar += 2 + (b.level < 1.0 ? m : 0);
  auto& lp = out.lp;
  lp.c.assign(nvar, 0.0);

  if (budget) {
    std::vector<double> row(nvar, 0.0);
    std::fill(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n), 1.0);
    lp.add_row(row, RowSense::eq, 1.0 - std::accumulate(out.shift.begin(), out.shift.end(), 0.0));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isinf(width[i])) continue;
    std::vector<double> row(nvar, 0.0);
    row[i] = 1.0;
    lp.add_row(row, RowSense::le, width[i]);
  }

  std::size_t next = n;
  for (const auto& b : blocks) {
    std::size_t ap = next++;
    std::size_t am = next++;
    out.a_plus.push_back(ap);
    out.a_minus.push_back(am);
    std::vector<double> expr(nvar, 0.0);
    expr[ap] = 1.0;
    expr[am] = -1.0;
    for (std::size_t j = 0; j < m; ++j) {
      // u_j + a - z'L_j >= shift'L_j, or a - z'L_j >= shift'L_j for the max-loss block.
      std::vector<double> row(nvar, 0.0);
      row[ap] = 1.0;
      row[am] = -1.0;
      double rhs = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        row[i] = -s.losses()[j][i];
        rhs += out.shift[i] * s.losses()[j][i];
      }
      if (b.level < 1.0) {
        std::size_t u = next + j;
        row[u] = 1.0;
        expr[u] = s.probs()[j] / (1.0 - b.level);
      }
      lp.add_row(row, RowSense::ge, rhs);
    }
    if (b.level < 1.0) next += m;
    if (b.bound) {
      lp.add_row(expr, RowSense::le, *b.bound);
    } else {
      for (std::size_t k = 0; k < nvar; ++k) lp.c[k] += expr[k];
    }
  }
  return out;
}

std::vector<double> extract_theta(const BuiltLp& b, const std::vector<double>& x) {
  std::vector<double> theta(b.shift.size());
  for (std::size_t i = 0; i < theta.size(); ++i) theta[i] = b.shift[i] + x[i];
  return theta;
}

// Range containing every feasible portfolio loss, widened by one.
std::pair<double, double> loss_bracket(const ScenarioMatrix& s, const FeasibleSet& set) {
  double lo = kInf;
  double hi = -kInf;
  for (const auto& row : s.losses()) {
    double rlo = 0.0;
    double rhi = 0.0;
    if (const auto* box = std::get_if<BoxSet>(&set)) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        double p = box->lo[i] * row[i];
        double q = box->hi[i] * row[i];
        rlo += std::min(p, q);
        rhi += std::max(p, q);
      }
    } else {
      rlo = *std::min_element(row.begin(), row.end());
      rhi = *std::max_element(row.begin(), row.end());
    }
    lo = std::min(lo, rlo);
    hi = std::max(hi, rhi);
  }
  return {lo - 1.0, hi + 1.0};
}

}  // namespace

ScenarioMatrix::ScenarioMatrix(std::vector<std::vector<double>> losses, std::vector<double> probs,
                               std::vector<std::string> names)
    : losses_(std::move(losses)), probs_(std::move(probs)), names_(std::move(names)) {
  if (losses_.empty() || losses_.front().empty()) throw std::invalid_argument("ScenarioMatrix: empty");
  if (probs_.size() != losses_.size()) throw std::invalid_argument("ScenarioMatrix: probability count mismatch");
  const std::size_t n = losses_.front().size();
  double total = 0.0;
  for (std::size_t j = 0; j < losses_.size(); ++j) {
    if (losses_[j].size() != n) throw std::invalid_argument("ScenarioMatrix: ragged rows");
    for (double v : losses_[j]) {
      if (!std::isfinite(v)) throw std::invalid_argument("ScenarioMatrix: non-finite loss");
    }
    if (!(probs_[j] > 0.0)) throw std::invalid_argument("ScenarioMatrix: probabilities must be positive");
    total += probs_[j];
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("ScenarioMatrix: probabilities do not sum to 1");
  if (names_.empty()) {
    for (std::size_t i = 0; i < n; ++i) names_.push_back("asset_" + std::to_string(i + 1));
  }
  if (names_.size() != n) throw std::invalid_argument("ScenarioMatrix: name count mismatch");
}

ScenarioMatrix ScenarioMatrix::uniform(std::vector<std::vector<double>> losses, std::vector<std::string> names) {
  const std::size_t m = losses.size();
  if (m == 0) throw std::invalid_argument("ScenarioMatrix: empty");
  std::vector<double> p(m, 1.0 / static_cast<double>(m));
  p.back() = 1.0 - std::accumulate(p.begin(), p.end() - 1, 0.0);
  return ScenarioMatrix(std::move(losses), std::move(p), std::move(names));
}

std::vector<double> ScenarioMatrix::portfolio_losses(const std::vector<double>& theta) const {
  if (theta.size() != assets()) throw std::invalid_argument("portfolio_losses: wrong dimension");
  std::vector<double> out(scenarios(), 0.0);
  for (std::size_t j = 0; j < scenarios(); ++j) {
    for (std::size_t i = 0; i < assets(); ++i) out[j] += theta[i] * losses_[j][i];
  }
  return out;
}

Distribution ScenarioMatrix::portfolio_law(const std::vector<double>& theta) const {
  auto y = portfolio_losses(theta);
  return Distribution::discrete(y, probs_);
}

ExtendedReal t_functional(double a, double x, const Distribution& d, const LambdaSpec& lambda) {
  ExtendedReal inner = ExtendedReal(a) + nonneg_ratio(d.stop_loss(a), std::max(0.0, lambda.one_minus(x)));
  return max(inner, x);
}

MinimizeTResult minimize_t(const Distribution& d, const LambdaSpec& lambda) {
  require_right_continuous(lambda, "minimize_t");
  double x_star = lambda_es(d, lambda).value;
  double level = lambda.eval(x_star);
  double a_star = d.ess_sup();
  if (level == 0.0) {
    a_star = d.ess_inf();
  } else if (level < 1.0) {
    a_star = var_left(d, level).value();
  }
  return {t_functional(a_star, x_star, d, lambda).value(), a_star, x_star};
}

double constraint_rewrite(const LambdaSpec& lambda, double ell) {
  require_right_continuous(lambda, "constraint_rewrite");
  return lambda.eval(ell);
}

ConvexityRegimeReport convexity_regime_report(const LambdaSpec& lambda, const Distribution& d, std::uint64_t seed) {
  ConvexityRegimeReport rep;
  rep.lambda_constant = lambda.is_constant();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<double> grid = default_probe_grid(lambda);
  try {
    rep.one_over_one_minus_convex = one_over_one_minus_convex(lambda, grid);
  } catch (const std::domain_error&) {
    rep.one_over_one_minus_convex = false;
  }
  const double lo = d.ess_inf();
  const double hi = d.ess_sup();
  const double span = std::max(1.0, hi - lo);
  auto close_enough = [](ExtendedReal lhs, ExtendedReal rhs) {
    if (rhs.is_pos_inf()) return true;
    if (lhs.is_pos_inf()) return false;
    return lhs.value() <= rhs.value() + 1e-10 * std::max(1.0, std::abs(rhs.value()));
  };

  // (i) midpoint convexity in (a, X) at fixed x, X on an 8-point space.
  {
    const std::size_t m = 8;
    std::vector<double> p(m, 1.0 / m);
    for (int trial = 0; trial < 300 && rep.convex_in_a_and_x_vector; ++trial) {
      double x = grid.empty() ? 0.0 : grid[rng() % grid.size()];
      std::vector<double> x1(m), x2(m), xm(m);
      for (std::size_t j = 0; j < m; ++j) {
        x1[j] = d.quantile_left(std::max(1e-9, unit(rng)));
        x2[j] = d.quantile_left(std::max(1e-9, unit(rng)));
        xm[j] = 0.5 * (x1[j] + x2[j]);
      }
      double a1 = lo - 0.5 * span + 2.0 * span * unit(rng);
      double a2 = lo - 0.5 * span + 2.0 * span * unit(rng);
      ExtendedReal t1 = t_functional(a1, x, Distribution::discrete(x1, p), lambda);
      ExtendedReal t2 = t_functional(a2, x, Distribution::discrete(x2, p), lambda);
      ExtendedReal tm = t_functional(0.5 * (a1 + a2), x, Distribution::discrete(xm, p), lambda);
      ExtendedReal avg = (t1.is_pos_inf() || t2.is_pos_inf()) ? ExtendedReal::pos_inf()
                                                              : ExtendedReal(0.5 * (t1.value() + t2.value()));
      if (!close_enough(tm, avg)) {
        rep.convex_in_a_and_x_vector = false;
        rep.witness.emplace_back("i_x", x);
      }
    }
  }

  // (ii) midpoint convexity in x. A violating pair of 1/(1-Lambda) is
  // promoted to a violation of T by pushing a below the support.
  {
    std::vector<double> xs;
    for (std::size_t k = 0; k < grid.size(); k += 5) xs.push_back(grid[k]);
    auto check = [&](double a, double x, double y) {
      ExtendedReal tx = t_functional(a, x, d, lambda);
      ExtendedReal ty = t_functional(a, y, d, lambda);
      ExtendedReal tm = t_functional(a, 0.5 * (x + y), d, lambda);
      ExtendedReal avg = (tx.is_pos_inf() || ty.is_pos_inf()) ? ExtendedReal::pos_inf()
                                                              : ExtendedReal(0.5 * (tx.value() + ty.value()));
      return close_enough(tm, avg);
    };
    for (std::size_t i = 0; i < xs.size() && rep.convex_in_x; ++i) {
      for (std::size_t j = i + 1; j < xs.size() && rep.convex_in_x; ++j) {
        for (double k = 1.0; k <= 1e9; k *= 4.0) {
          double a = lo - k;
          if (!check(a, xs[i], xs[j])) {
            rep.convex_in_x = false;
            rep.witness.emplace_back("ii_x", xs[i]);
            rep.witness.emplace_back("ii_y", xs[j]);
            rep.witness.emplace_back("ii_a", a);
            break;
          }
        }
      }
    }
    for (int trial = 0; trial < 300 && rep.convex_in_x && !xs.empty(); ++trial) {
      double a = lo - span + 3.0 * span * unit(rng);
      double x = xs[rng() % xs.size()];
      double y = xs[rng() % xs.size()];
      if (!check(a, x, y)) {
        rep.convex_in_x = false;
        rep.witness.emplace_back("ii_x", x);
        rep.witness.emplace_back("ii_y", y);
        rep.witness.emplace_back("ii_a", a);
      }
    }
    rep.x_regime_consistent = rep.convex_in_x == rep.one_over_one_minus_convex;
  }

  // (iii) joint quasi-convexity in (a, x): for non-constant Lambda take
  // y < x with Lambda(y) >= Lambda((x+y)/2) > Lambda(x), t = x, a = t - 1,
  // b = t and X = a w.p. Lambda(x), t otherwise.
  if (!rep.lambda_constant) {
    std::vector<double> cand = grid;
    for (double b : lambda.breakpoints()) {
      for (double off : {-1e-3, 0.0, 1e-3}) cand.push_back(b + off);
    }
    std::sort(cand.begin(), cand.end());
    bool found = false;
    for (std::size_t i = 0; i < cand.size() && !found; ++i) {
      double x = cand[i];
      double lx = lambda.eval(x);
      if (!(lx < 1.0)) continue;
      for (std::size_t j = 0; j < i && !found; ++j) {
        double y = cand[j];
        double mid = 0.5 * (x + y);
        if (!(lambda.eval(mid) > lx) || lambda.eval(y) < lambda.eval(mid)) continue;
        double t = x;
        double a = t - 1.0;
        std::vector<double> vals{a, t};
        std::vector<double> probs{lx, 1.0 - lx};
        Distribution law = Distribution::discrete(vals, probs);
        ExtendedReal t1 = t_functional(a, x, law, lambda);
        ExtendedReal t2 = t_functional(t, y, law, lambda);
        ExtendedReal tm = t_functional(0.5 * (a + t), mid, law, lambda);
        if (tm > max(t1, t2) + ExtendedReal(1e-12)) {
          found = true;
          rep.witness.emplace_back("iii_x", x);
          rep.witness.emplace_back("iii_y", y);
          rep.witness.emplace_back("iii_t", t);
          rep.witness.emplace_back("iii_T_mid", tm.to_double());
          rep.witness.emplace_back("iii_T_max", max(t1, t2).to_double());
        }
      }
    }
    rep.ax_quasi_convexity_violation = found;
  } else {
    for (int trial = 0; trial < 500; ++trial) {
      double a1 = lo - span + 3.0 * span * unit(rng);
      double a2 = lo - span + 3.0 * span * unit(rng);
      double x1 = lo - span + 3.0 * span * unit(rng);
      double x2 = lo - span + 3.0 * span * unit(rng);
      ExtendedReal t1 = t_functional(a1, x1, d, lambda);
      ExtendedReal t2 = t_functional(a2, x2, d, lambda);
      ExtendedReal tm = t_functional(0.5 * (a1 + a2), 0.5 * (x1 + x2), d, lambda);
      if (!close_enough(tm, max(t1, t2))) {
        rep.ax_quasi_convexity_violation = true;
        rep.witness.emplace_back("iii_a1", a1);
        break;
      }
    }
  }
  rep.ax_regime_consistent = rep.ax_quasi_convexity_violation == !rep.lambda_constant;
  return rep;
}

CvarLpResult cvar_lp(const ScenarioMatrix& s, double alpha, const FeasibleSet& set) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("cvar_lp: level must lie in [0,1]");
  BuiltLp b = build_portfolio_lp(s, set, {EsBlock{alpha, std::nullopt}});
  LPSolution sol = solve_lp(b.lp);
  CvarLpResult out;
  out.status = sol.status;
  if (sol.status != LPStatus::optimal) return out;
  out.theta = extract_theta(b, sol.x);
  out.a_star = sol.x[b.a_plus[0]] - sol.x[b.a_minus[0]];
  out.value = sol.objective;
  out.residual = lp_residual(b.lp, sol.x);
  return out;
}

PortfolioResult min_portfolio_lambda_es(const ScenarioMatrix& s, const LambdaSpec& lambda, const FeasibleSet& set) {
  require_right_continuous(lambda, "min_portfolio_lambda_es");
  PortfolioResult out;
  std::map<double, CvarLpResult> cache;
  auto solve_at = [&](double level) -> const CvarLpResult& {
    auto it = cache.find(level);
    if (it != cache.end()) return it->second;
    ++out.lp_solves;
    auto r = cvar_lp(s, level, set);
    if (r.status != LPStatus::optimal) throw LpFailure{r.status};
    return cache.emplace(level, std::move(r)).first->second;
  };

  const auto [b_lo, b_hi] = loss_bracket(s, set);
  double best = kInf;
  std::vector<double> best_theta;

  try {
    auto consider = [&](double value, const std::vector<double>& theta) {
      if (value < best) {
        best = value;
        best_theta = theta;
      }
    };
    for (const auto& p : lambda.pieces()) {
      if (p.constant) {
        const auto& r = solve_at(p.level);
        consider(std::max(r.value, p.lo), r.theta);
        continue;
      }
      double lam_lo = std::isinf(p.lo) ? lambda.limit_neg_inf() : lambda.right_limit(p.lo);
      double lam_hi = std::isinf(p.hi) ? lambda.limit_pos_inf() : lambda.left_limit(p.hi);
      const auto& r_lo = solve_at(lam_lo);
      if (r_lo.value <= p.lo) {
        consider(p.lo, r_lo.theta);
        continue;
      }
      const auto& r_hi = solve_at(lam_hi);
      if (r_hi.value >= p.hi) {
        consider(r_hi.value, r_hi.theta);
        continue;
      }
      double l = std::max(p.lo, b_lo);
      double r = std::min(p.hi, b_hi);
      std::vector<double> theta_r = r_hi.theta;
      for (int it = 0; it < 200 && r - l > 1e-11 * std::max(1.0, std::abs(r)); ++it) {
        double m = 0.5 * (l + r);
        const auto& v = solve_at(lambda.eval(m));
        if (v.value > m) {
          l = m;
        } else {
          r = m;
          theta_r = v.theta;
        }
      }
      consider(r, theta_r);
    }

    bool convex = false;
    try {
      convex = one_over_one_minus_convex(lambda);
    } catch (const std::domain_error&) {
      convex = false;
    }
    if (convex) {
      // max(V(x), x) is quasi-convex in x: V nonincreasing, x increasing.
      auto phi = [&](double x) { return std::max(solve_at(lambda.eval(x)).value, x); };
      const double g = 0.5 * (std::sqrt(5.0) - 1.0);
      double a = b_lo;
      double b = b_hi;
      double c = b - g * (b - a);
      double d = a + g * (b - a);
      double fc = phi(c);
      double fd = phi(d);
      for (int it = 0; it < 300 && b - a > 1e-10 * std::max(1.0, std::abs(b)); ++it) {
        if (fc < fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - g * (b - a);
          fc = phi(c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + g * (b - a);
          fd = phi(d);
        }
      }
      out.golden_value = std::min(fc, fd);
    }
  } catch (const LpFailure& f) {
    out.status = f.status;
    return out;
  }

  out.status = LPStatus::optimal;
  out.value = best;
  out.x_star = best;
  out.theta = best_theta;
  return out;
}

ConstrainedResult min_objective_with_lambda_es_constraint(const ScenarioMatrix& s, double objective_level,
                                                          const LambdaSpec& lambda, double ell,
                                                          const FeasibleSet& set) {
  if (!(objective_level >= 0.0 && objective_level <= 1.0)) {
    throw std::invalid_argument("objective level must lie in [0,1]");
  }
  double level = constraint_rewrite(lambda, ell);
  BuiltLp b = build_portfolio_lp(s, set, {EsBlock{objective_level, std::nullopt}, EsBlock{level, ell}});
  LPSolution sol = solve_lp(b.lp);
  ConstrainedResult out;
  out.status = sol.status;
  out.level = level;
  if (sol.status != LPStatus::optimal) return out;
  out.theta = extract_theta(b, sol.x);
  out.value = sol.objective;
  return out;
}

}  // namespace lambdaes
