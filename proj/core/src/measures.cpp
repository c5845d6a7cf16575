#include "lambdaes/measures.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace lambdaes {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_level(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("level must lie in [0,1]");
}

std::vector<double> joint_breakpoints(const Distribution& d, const LambdaSpec& lambda) {
  std::vector<double> xs = d.breakpoints();
  auto lb = lambda.breakpoints();
  xs.insert(xs.end(), lb.begin(), lb.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

// inf{x : F(x) >= Lambda(x)} (or > when strict). F - Lambda is nondecreasing,
// so the first interval of the joint breakpoint partition where the predicate
// turns true contains the answer.
ExtendedReal first_crossing(const Distribution& d, const LambdaSpec& lambda, bool strict) {
  auto pred = [strict](double f, double l) { return strict ? f > l : f >= l; };
  if (pred(0.0, lambda.limit_neg_inf())) return ExtendedReal::neg_inf();

  const auto xs = joint_breakpoints(d, lambda);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double lo = xs[i];
    double f_lo = d.cdf(lo);
    if (pred(f_lo, lambda.eval(lo))) return lo;
    if (pred(f_lo, lambda.right_limit(lo))) return lo;
    if (i + 1 == xs.size()) break;

    double hi = xs[i + 1];
    double f_hi = d.cdf_left(hi);
    if (!pred(f_hi, lambda.left_limit(hi))) continue;

    double l_lo = lambda.right_limit(lo);
    double l_hi = lambda.left_limit(hi);
    auto f_at = [&](double x) { return f_lo + (f_hi - f_lo) * (x - lo) / (hi - lo); };
    if (l_lo == l_hi) {
      // Lambda is constant here, so the crossing solves a linear equation.
      double x = lo + (l_lo - f_lo) * (hi - lo) / (f_hi - f_lo);
      return std::clamp(x, lo, hi);
    }
    auto phi = [&](double x) {
      if (x <= lo) return f_lo - l_lo;
      if (x >= hi) return f_hi - l_hi;
      return f_at(x) - lambda.eval(x);
    };
    double p_lo = phi(lo);
    double p_hi = phi(hi);
    if (p_lo >= 0.0) return lo;
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(phi, lo, hi, p_lo, p_hi, boost::math::tools::eps_tolerance<double>(52),
                                               iters);
    return 0.5 * (r.first + r.second);
  }
  // Only the strict form gets here: Lambda stays at 1 above the support.
  return ExtendedReal::pos_inf();
}

struct LevelCurve {
  std::function<ExtendedReal(double)> at;
  std::function<ExtendedReal(double)> from_below;  // limit as the level rises to l
  std::function<ExtendedReal(double)> from_above;  // limit as the level falls to l
};

// Per piece of Lambda, the sup of min(g(x), x) and the inf of max(g(x), x)
// for g(x) = curve(Lambda(x)), which is nonincreasing in x.
SupInfForms sup_inf_forms(const Distribution& d, const LambdaSpec& lambda, const LevelCurve& curve) {
  ExtendedReal sup = ExtendedReal::neg_inf();
  ExtendedReal inf = ExtendedReal::pos_inf();
  const double bracket_lo = d.ess_inf() - 1.0;
  const double bracket_hi = d.ess_sup() + 1.0;

  for (const auto& p : lambda.pieces()) {
    ExtendedReal lo(p.lo);
    ExtendedReal hi(p.hi);
    if (p.constant) {
      ExtendedReal c = curve.at(p.level);
      sup = max(sup, min(c, hi));
      inf = min(inf, max(c, lo));
      continue;
    }
    double lam_lo = std::isinf(p.lo) ? lambda.limit_neg_inf() : lambda.right_limit(p.lo);
    double lam_hi = std::isinf(p.hi) ? lambda.limit_pos_inf() : lambda.left_limit(p.hi);
    ExtendedReal g_lo = curve.from_below(lam_lo);
    ExtendedReal g_hi = curve.from_above(lam_hi);
    if (g_lo <= lo) {
      sup = max(sup, g_lo);
      inf = min(inf, lo);
    } else if (g_hi >= hi) {
      sup = max(sup, hi);
      inf = min(inf, g_hi);
    } else {
      double l = std::max(p.lo, bracket_lo);
      double r = std::min(p.hi, bracket_hi);
      for (int it = 0; it < 400 && r - l > 0; ++it) {
        double m = 0.5 * (l + r);
        if (m <= l || m >= r) break;
        if (curve.at(lambda.eval(m)) > ExtendedReal(m)) {
          l = m;
        } else {
          r = m;
        }
      }
      double x = 0.5 * (l + r);
      sup = max(sup, x);
      inf = min(inf, x);
    }
  }
  return {sup, inf};
}

LevelCurve var_curve(const Distribution& d) {
  return {[&d](double l) { return var_left(d, l); }, [&d](double l) { return var_left(d, l); },
          [&d](double l) { return var_right(d, l); }};
}

LevelCurve var_right_curve(const Distribution& d) {
  return {[&d](double l) { return var_right(d, l); }, [&d](double l) { return var_left(d, l); },
          [&d](double l) { return var_right(d, l); }};
}

LevelCurve es_curve(const Distribution& d) {
  auto f = [&d](double l) { return ExtendedReal(es(d, l)); };
  return {f, f, f};
}

}  // namespace

ExtendedReal var_left(const Distribution& d, double alpha) {
  check_level(alpha);
  if (alpha == 0.0) return ExtendedReal::neg_inf();
  return d.quantile_left(alpha);
}

ExtendedReal var_right(const Distribution& d, double alpha) {
  check_level(alpha);
  if (alpha == 1.0) return ExtendedReal::pos_inf();
  return d.quantile_right(alpha);
}

double es(const Distribution& d, double alpha) {
  check_level(alpha);
  if (alpha == 1.0) return d.ess_sup();
  if (alpha == 0.0) return d.mean();
  return d.upper_integral(alpha) / (1.0 - alpha);
}

RuResult es_ru(const Distribution& d, double alpha) {
  check_level(alpha);
  if (alpha == 1.0) return {d.ess_sup(), d.ess_sup(), d.ess_sup()};
  ExtendedReal lo = var_left(d, alpha);
  ExtendedReal hi = var_right(d, alpha);
  double a = lo.is_finite() ? lo.value() : hi.value();
  return {a + d.stop_loss(a) / (1.0 - alpha), lo, hi};
}

ExtendedReal lambda_var(const Distribution& d, const LambdaSpec& lambda) { return first_crossing(d, lambda, false); }

ExtendedReal lambda_var_right(const Distribution& d, const LambdaSpec& lambda) {
  return first_crossing(d, lambda, true);
}

SupInfForms lambda_var_forms(const Distribution& d, const LambdaSpec& lambda) {
  return sup_inf_forms(d, lambda, var_curve(d));
}

SupInfForms lambda_var_right_forms(const Distribution& d, const LambdaSpec& lambda) {
  return sup_inf_forms(d, lambda, var_right_curve(d));
}

bool CrossingCertificate::holds(double tol) const {
  double t = tol * std::max(1.0, std::abs(x_star));
  return right_value <= x_star + t && x_star <= left_value + t;
}

CrossingCertificate crossing_certificate(const Distribution& d, const LambdaSpec& lambda, double x_star) {
  return {x_star, es(d, lambda.left_limit(x_star)), es(d, lambda.right_limit(x_star))};
}

LambdaEsResult lambda_es(const Distribution& d, const LambdaSpec& lambda) {
  double v = sup_inf_forms(d, lambda, es_curve(d)).sup_form.value();
  return {v, crossing_certificate(d, lambda, v)};
}

double lambda_es_inf_form(const Distribution& d, const LambdaSpec& lambda) {
  return sup_inf_forms(d, lambda, es_curve(d)).inf_form.value();
}

double lambda_es_bisection(const Distribution& d, const LambdaSpec& lambda, double tol) {
  double lo = d.mean() - 1.0;
  double hi = d.ess_sup() + 1.0;
  for (int it = 0; it < 400 && hi - lo > tol; ++it) {
    double m = 0.5 * (lo + hi);
    if (m <= lo || m >= hi) break;
    if (es(d, lambda.eval(m)) >= m) {
      lo = m;
    } else {
      hi = m;
    }
  }
  return 0.5 * (lo + hi);
}

bool is_tail_measure_invariant(const Distribution& d, const LambdaSpec& lambda, double alpha,
                               const Distribution& lowered) {
  check_level(alpha);
  std::vector<double> us{alpha, 1.0};
  for (const auto* law : {&d, &lowered}) {
    for (const auto& s : law->segments()) {
      if (s.u_hi > alpha) us.push_back(s.u_hi);
      if (s.u_lo > alpha) us.push_back(s.u_lo);
    }
  }
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end()), us.end());
  auto differ = [](double a, double b) { return std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a)); };
  for (std::size_t i = 0; i < us.size(); ++i) {
    double u = us[i];
    if (u < 1.0 && differ(d.quantile_right(u), lowered.quantile_right(u))) {
      throw std::invalid_argument("is_tail_measure_invariant: quantiles differ above alpha");
    }
    if (u > alpha && differ(d.quantile_left(u), lowered.quantile_left(u))) {
      throw std::invalid_argument("is_tail_measure_invariant: quantiles differ above alpha");
    }
    if (i + 1 < us.size()) {
      double m = 0.5 * (u + us[i + 1]);
      if (differ(d.quantile_left(m), lowered.quantile_left(m))) {
        throw std::invalid_argument("is_tail_measure_invariant: quantiles differ above alpha");
      }
    }
  }
  double a = lambda_es(d, lambda).value;
  double b = lambda_es(lowered, lambda).value;
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a));
}

}  // namespace lambdaes
