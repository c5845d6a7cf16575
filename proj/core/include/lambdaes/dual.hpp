#pragma once

#include <span>
#include <vector>

#include "lambdaes/extended_real.hpp"
#include "lambdaes/lambda.hpp"
#include "lambdaes/random_vector.hpp"
#include "lambdaes/report.hpp"

namespace lambdaes {

// Alternative weighting q of the sample points of a finite space with base
// probabilities p > 0.
struct MeasureChange {
  std::vector<double> base;
  std::vector<double> alt;

  MeasureChange(std::vector<double> base_probs, std::vector<double> alt_probs);
  // min over q_j > 0 of p_j / q_j, the Q-essential infimum of dP/dQ.
  double min_density_ratio() const;
  double expectation(std::span<const double> values) const;
};

// R(t, Q) = min(t, sup{x : Lambda(x) >= 1 - c}) with c = min_{q_j > 0} p_j/q_j.
ExtendedReal r_function(ExtendedReal t, const MeasureChange& q, const LambdaSpec& lambda);

struct DualBoundCheck {
  ExtendedReal lhs;  // R(E_Q[X], Q)
  double rhs;        // lambda_es of the law of X under P
  bool ok;
};
DualBoundCheck dual_lower_bound_check(const RandomVector& space, std::size_t variable, const LambdaSpec& lambda,
                                      const MeasureChange& q);

// The weighting attaining sup_Q R(E_Q[X], Q) for left-continuous Lambda:
// density 1/(1 - Lambda(x*)) filled from the largest outcomes down.
// Throws std::invalid_argument when Lambda is not left-continuous.
MeasureChange witness_supremum(const RandomVector& space, std::size_t variable, const LambdaSpec& lambda);

// On the t grid: R nondecreasing in t, R(t1) - R(t2) <= t1 - t2 for t1 >= t2,
// and R(-inf, Q) = -inf.
PropertyReport r_properties_check(const MeasureChange& q, const LambdaSpec& lambda, const std::vector<double>& t_grid);

}  // namespace lambdaes
