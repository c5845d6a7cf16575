#include "lambdaes/dual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "lambdaes/measures.hpp"

namespace lambdaes {

MeasureChange::MeasureChange(std::vector<double> base_probs, std::vector<double> alt_probs)
    : base(std::move(base_probs)), alt(std::move(alt_probs)) {
  if (base.size() != alt.size() || base.empty()) throw std::invalid_argument("MeasureChange: size mismatch");
  double sp = 0.0;
  double sq = 0.0;
  for (std::size_t j = 0; j < base.size(); ++j) {
    if (!(base[j] > 0.0)) throw std::invalid_argument("MeasureChange: base probabilities must be positive");
    if (!(alt[j] >= 0.0)) throw std::invalid_argument("MeasureChange: negative alt probability");
    sp += base[j];
    sq += alt[j];
  }
  if (std::abs(sp - 1.0) > 1e-12 || std::abs(sq - 1.0) > 1e-12) {
    throw std::invalid_argument("MeasureChange: probabilities do not sum to 1");
  }
}

double MeasureChange::min_density_ratio() const {
  double c = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < base.size(); ++j) {
    if (alt[j] > 0.0) c = std::min(c, base[j] / alt[j]);
  }
  return c;
}

double MeasureChange::expectation(std::span<const double> values) const {
  if (values.size() != alt.size()) throw std::invalid_argument("MeasureChange: wrong variable length");
  double s = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) s += alt[j] * values[j];
  return s;
}

ExtendedReal r_function(ExtendedReal t, const MeasureChange& q, const LambdaSpec& lambda) {
  double tau = 1.0 - q.min_density_ratio();
  return min(t, lambda.upper_level_sup(tau));
}

DualBoundCheck dual_lower_bound_check(const RandomVector& space, std::size_t variable, const LambdaSpec& lambda,
                                      const MeasureChange& q) {
  const auto& x = space.variable(variable);
  ExtendedReal lhs = r_function(q.expectation(x), q, lambda);
  double rhs = lambda_es(space.law(variable), lambda).value;
  return {lhs, rhs, lhs <= ExtendedReal(rhs + 1e-10)};
}

MeasureChange witness_supremum(const RandomVector& space, std::size_t variable, const LambdaSpec& lambda) {
  if (!lambda.is_left_continuous()) throw std::invalid_argument("witness_supremum: Lambda must be left-continuous");
  const auto& x = space.variable(variable);
  const auto& p = space.probs();
  double x_star = lambda_es(space.law(variable), lambda).value;
  double om = lambda.one_minus(x_star);

  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] > x[b]; });

  std::vector<double> q(x.size(), 0.0);
  if (om >= 1.0) return MeasureChange(p, p);
  if (om <= 0.0) {
    // Unbounded density: all mass on the maximal outcomes.
    double top = x[order.front()];
    double mass = 0.0;
    for (std::size_t j : order) {
      if (x[j] == top) mass += p[j];
    }
    for (std::size_t j : order) {
      if (x[j] == top) q[j] = p[j] / mass;
    }
  } else {
    // Density kept just under 1/om: p_j/q_j rounds either way, and one ulp
    // above Lambda(x*) in 1 - c moves the level set past a step.
    const double cap = (1.0 - 1e-12) / om;
    double remaining = 1.0;
    for (std::size_t j : order) {
      double take = std::min(p[j] * cap, remaining);
      q[j] = take;
      remaining -= take;
      if (remaining <= 0.0) break;
    }
    double total = std::accumulate(q.begin(), q.end(), 0.0);
    for (double& v : q) v /= total;
  }
  return MeasureChange(p, std::move(q));
}

PropertyReport r_properties_check(const MeasureChange& q, const LambdaSpec& lambda, const std::vector<double>& t_grid) {
  PropertyReport rep;
  rep.name = "r_function_properties";
  std::vector<double> ts = t_grid;
  std::sort(ts.begin(), ts.end());
  std::vector<ExtendedReal> r(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) r[i] = r_function(ts[i], q, lambda);

  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    ++rep.trials;
    if (r[i + 1] < r[i]) {
      ++rep.failures;
      rep.record("monotonicity_t", ts[i]);
    }
  }
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      ++rep.trials;
      // Both -inf: the difference is taken as 0.
      if (r[i].is_neg_inf() && r[j].is_neg_inf()) continue;
      if (r[j].is_neg_inf() || (r[i] - r[j]).to_double() > ts[i] - ts[j] + 1e-12) {
        ++rep.failures;
        rep.record("difference_bound_t1", ts[i]);
        rep.record("difference_bound_t2", ts[j]);
      }
    }
  }
  ++rep.trials;
  if (!r_function(ExtendedReal::neg_inf(), q, lambda).is_neg_inf()) {
    ++rep.failures;
    rep.record("inf_over_t", 0.0);
  }
  return rep;
}

}  // namespace lambdaes
