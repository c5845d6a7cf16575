#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lambdaes/extended_real.hpp"

namespace lambdaes {

struct ConstantLambda {
  double alpha;
};

enum class Side { left, right };

// Value values[k] on the k-th gap between sorted breaks (q breaks, q+1 values).
// side = right makes the step right-continuous: Lambda(b_k) = values[k+1].
struct StepLambda {
  std::vector<double> breaks;
  std::vector<double> values;
  Side side = Side::right;
};

// Lambda(x) = 1 / (exp(a x) + 1).
struct LogisticLambda {
  double a;
};

// Lambda(x) = clamp(intercept + slope * x, floor, cap) with slope < 0.
struct ClampedLinearLambda {
  double slope;
  double intercept;
  double floor;
  double cap;
};

// Maximal interval of x on which Lambda is either constant or continuous and
// strictly decreasing. Bounds may be infinite; endpoint membership is not
// tracked since callers only need one-sided limits there.
struct LambdaPiece {
  double lo;
  double hi;
  bool constant;
  double level;  // meaningful when constant
};

class LambdaSpec {
 public:
  using Variant = std::variant<ConstantLambda, StepLambda, LogisticLambda, ClampedLinearLambda>;

  // Validates: values in [0,1], steps weakly decreasing, breaks strictly
  // increasing, logistic a > 0, clamped slope < 0 and floor <= cap.
  LambdaSpec(Variant v);  // NOLINT(google-explicit-constructor)

  static LambdaSpec constant(double alpha) { return LambdaSpec(ConstantLambda{alpha}); }
  static LambdaSpec step(std::vector<double> breaks, std::vector<double> values, Side side = Side::right) {
    return LambdaSpec(StepLambda{std::move(breaks), std::move(values), side});
  }
  static LambdaSpec logistic(double a) { return LambdaSpec(LogisticLambda{a}); }
  static LambdaSpec clamped_linear(double slope, double intercept, double floor, double cap) {
    return LambdaSpec(ClampedLinearLambda{slope, intercept, floor, cap});
  }

  const Variant& variant() const { return v_; }
  std::string type_name() const;

  double operator()(double x) const { return eval(x); }
  double eval(double x) const;
  double left_limit(double x) const;
  double right_limit(double x) const;
  // 1 - Lambda(x), accurate when Lambda(x) is close to 1.
  double one_minus(double x) const;
  double limit_neg_inf() const;  // sup Lambda
  double limit_pos_inf() const;  // inf Lambda

  bool is_right_continuous() const;
  bool is_left_continuous() const;
  bool is_constant() const;

  // sup{x : Lambda(x) >= tau}; +inf when every x qualifies, -inf when none does.
  ExtendedReal upper_level_sup(double tau) const;

  // Finite x where Lambda is not smooth (jumps or kinks), sorted.
  std::vector<double> breakpoints() const;
  std::vector<LambdaPiece> pieces() const;

  // Range where Lambda is not locally constant, widened by one unit; used as
  // the default probe range.
  std::pair<double, double> relevant_range() const;

 private:
  Variant v_;
};

// 201 evenly spaced points over relevant_range(), restricted to Lambda < 1.
std::vector<double> default_probe_grid(const LambdaSpec& lambda);

// Midpoint convexity of x -> 1/(1 - Lambda(x)) over all grid pairs, relative
// tolerance 1e-10. Constant -> true; a step with any jump -> false. Otherwise
// throws std::domain_error if Lambda = 1 at a probe point.
bool one_over_one_minus_convex(const LambdaSpec& lambda, const std::vector<double>& probe_grid);
bool one_over_one_minus_convex(const LambdaSpec& lambda);

}  // namespace lambdaes
