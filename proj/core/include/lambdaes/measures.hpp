#pragma once

#include "lambdaes/distribution.hpp"
#include "lambdaes/extended_real.hpp"
#include "lambdaes/lambda.hpp"

namespace lambdaes {

// Levels must lie in [0,1]; std::invalid_argument otherwise.

// inf{x : F(x) >= alpha}; -inf at 0, ess-sup at 1.
ExtendedReal var_left(const Distribution& d, double alpha);
// inf{x : F(x) > alpha}; ess-inf at 0, +inf at 1.
ExtendedReal var_right(const Distribution& d, double alpha);

// Tail average of the quantile above alpha; the mean at 0, ess-sup at 1.
// Always finite for the bounded laws supported here.
double es(const Distribution& d, double alpha);

struct RuResult {
  double value;
  ExtendedReal argmin_lo;
  ExtendedReal argmin_hi;
};
// min_a a + E(X-a)+/(1-alpha), evaluated at a minimiser; the argmin interval
// is [VaR, VaR+] for alpha < 1 and {ess-sup} at alpha = 1.
RuResult es_ru(const Distribution& d, double alpha);

// inf{x : F(x) >= Lambda(x)} and inf{x : F(x) > Lambda(x)} by a scan over
// the joint breakpoints with root finding on smooth pieces.
ExtendedReal lambda_var(const Distribution& d, const LambdaSpec& lambda);
ExtendedReal lambda_var_right(const Distribution& d, const LambdaSpec& lambda);

// sup_x min(q_{Lambda(x)}, x) and inf_x max(q_{Lambda(x)}, x) for q = VaR
// (or VaR+), computed piece by piece; both equal the direct value.
struct SupInfForms {
  ExtendedReal sup_form;
  ExtendedReal inf_form;
};
SupInfForms lambda_var_forms(const Distribution& d, const LambdaSpec& lambda);
SupInfForms lambda_var_right_forms(const Distribution& d, const LambdaSpec& lambda);

// ES at Lambda(x*+) <= x* <= ES at Lambda(x*-).
struct CrossingCertificate {
  double x_star;
  double left_value;
  double right_value;
  bool holds(double tol = 1e-9) const;
};
CrossingCertificate crossing_certificate(const Distribution& d, const LambdaSpec& lambda, double x_star);

struct LambdaEsResult {
  double value;
  CrossingCertificate cert;
};
// sup_x min(ES_{Lambda(x)}, x), exact over the pieces of Lambda.
LambdaEsResult lambda_es(const Distribution& d, const LambdaSpec& lambda);
// inf_x max(ES_{Lambda(x)}, x), same piecewise scheme.
double lambda_es_inf_form(const Distribution& d, const LambdaSpec& lambda);
// Independent path: bisection on ES_{Lambda(x)} - x over [E - 1, ess-sup + 1].
double lambda_es_bisection(const Distribution& d, const LambdaSpec& lambda, double tol = 1e-12);

// True iff lambda_es agrees on d and lowered within 1e-12. Throws
// std::invalid_argument if the two quantile functions differ above alpha.
bool is_tail_measure_invariant(const Distribution& d, const LambdaSpec& lambda, double alpha,
                               const Distribution& lowered);

}  // namespace lambdaes
