#include "lambdaes/lambda.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lambdaes {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_level(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(what) + " must lie in [0,1]");
}

bool has_jump(const StepLambda& s) {
  return std::adjacent_find(s.values.begin(), s.values.end(), std::not_equal_to<>()) != s.values.end();
}

std::size_t count_le(const std::vector<double>& b, double x) {
  return static_cast<std::size_t>(std::upper_bound(b.begin(), b.end(), x) - b.begin());
}
std::size_t count_lt(const std::vector<double>& b, double x) {
  return static_cast<std::size_t>(std::lower_bound(b.begin(), b.end(), x) - b.begin());
}

double logistic_value(double a, double x) {
  double ax = a * x;
  if (ax >= 0) {
    double e = std::exp(-ax);
    return e / (1.0 + e);
  }
  return 1.0 / (std::exp(ax) + 1.0);
}

double logistic_complement(double a, double x) {
  double ax = a * x;
  if (ax >= 0) return 1.0 / (1.0 + std::exp(-ax));
  double e = std::exp(ax);
  return e / (1.0 + e);
}

double clamp_x_cap(const ClampedLinearLambda& c) { return (c.cap - c.intercept) / c.slope; }
double clamp_x_floor(const ClampedLinearLambda& c) { return (c.floor - c.intercept) / c.slope; }

}  // namespace

LambdaSpec::LambdaSpec(Variant v) : v_(std::move(v)) {
  std::visit(Overloaded{
                 [](const ConstantLambda& c) { check_level(c.alpha, "constant alpha"); },
                 [](const StepLambda& s) {
                   if (s.values.size() != s.breaks.size() + 1) {
                     throw std::invalid_argument("step: need one more value than breaks");
                   }
                   for (double b : s.breaks) {
                     if (!std::isfinite(b)) throw std::invalid_argument("step: non-finite break");
                   }
                   for (std::size_t i = 1; i < s.breaks.size(); ++i) {
                     if (!(s.breaks[i] > s.breaks[i - 1])) throw std::invalid_argument("step: breaks must increase");
                   }
                   for (std::size_t i = 0; i < s.values.size(); ++i) {
                     check_level(s.values[i], "step value");
                     if (i > 0 && s.values[i] > s.values[i - 1]) {
                       throw std::invalid_argument("step: values must be nonincreasing");
                     }
                   }
                 },
                 [](const LogisticLambda& l) {
                   if (!(l.a > 0.0) || !std::isfinite(l.a)) throw std::invalid_argument("logistic: a must be positive");
                 },
                 [](const ClampedLinearLambda& c) {
                   if (!(c.slope < 0.0) || !std::isfinite(c.slope)) {
                     throw std::invalid_argument("clamped_linear: slope must be negative");
                   }
                   if (!std::isfinite(c.intercept)) throw std::invalid_argument("clamped_linear: bad intercept");
                   check_level(c.floor, "clamped_linear floor");
                   check_level(c.cap, "clamped_linear cap");
                   if (c.floor > c.cap) throw std::invalid_argument("clamped_linear: floor above cap");
                 },
             },
             v_);
}

std::string LambdaSpec::type_name() const {
  return std::visit(Overloaded{
                        [](const ConstantLambda&) { return std::string("constant"); },
                        [](const StepLambda&) { return std::string("step"); },
                        [](const LogisticLambda&) { return std::string("logistic"); },
                        [](const ClampedLinearLambda&) { return std::string("clamped_linear"); },
                    },
                    v_);
}

double LambdaSpec::eval(double x) const {
  return std::visit(
      Overloaded{
          [](const ConstantLambda& c) { return c.alpha; },
          [x](const StepLambda& s) {
            return s.side == Side::right ? s.values[count_le(s.breaks, x)] : s.values[count_lt(s.breaks, x)];
          },
          [x](const LogisticLambda& l) { return logistic_value(l.a, x); },
          [x](const ClampedLinearLambda& c) { return std::clamp(c.intercept + c.slope * x, c.floor, c.cap); },
      },
      v_);
}

double LambdaSpec::left_limit(double x) const {
  if (const auto* s = std::get_if<StepLambda>(&v_)) return s->values[count_lt(s->breaks, x)];
  return eval(x);
}

double LambdaSpec::right_limit(double x) const {
  if (const auto* s = std::get_if<StepLambda>(&v_)) return s->values[count_le(s->breaks, x)];
  return eval(x);
}

double LambdaSpec::one_minus(double x) const {
  if (const auto* l = std::get_if<LogisticLambda>(&v_)) return logistic_complement(l->a, x);
  return 1.0 - eval(x);
}

double LambdaSpec::limit_neg_inf() const {
  return std::visit(Overloaded{
                        [](const ConstantLambda& c) { return c.alpha; },
                        [](const StepLambda& s) { return s.values.front(); },
                        [](const LogisticLambda&) { return 1.0; },
                        [](const ClampedLinearLambda& c) { return c.cap; },
                    },
                    v_);
}

double LambdaSpec::limit_pos_inf() const {
  return std::visit(Overloaded{
                        [](const ConstantLambda& c) { return c.alpha; },
                        [](const StepLambda& s) { return s.values.back(); },
                        [](const LogisticLambda&) { return 0.0; },
                        [](const ClampedLinearLambda& c) { return c.floor; },
                    },
                    v_);
}

bool LambdaSpec::is_right_continuous() const {
  if (const auto* s = std::get_if<StepLambda>(&v_)) return s->side == Side::right || !has_jump(*s);
  return true;
}

bool LambdaSpec::is_left_continuous() const {
  if (const auto* s = std::get_if<StepLambda>(&v_)) return s->side == Side::left || !has_jump(*s);
  return true;
}

bool LambdaSpec::is_constant() const {
  return std::visit(Overloaded{
                        [](const ConstantLambda&) { return true; },
                        [](const StepLambda& s) { return !has_jump(s); },
                        [](const LogisticLambda&) { return false; },
                        [](const ClampedLinearLambda& c) { return c.floor == c.cap; },
                    },
                    v_);
}

ExtendedReal LambdaSpec::upper_level_sup(double tau) const {
  return std::visit(
      Overloaded{
          [tau](const ConstantLambda& c) { return c.alpha >= tau ? ExtendedReal::pos_inf() : ExtendedReal::neg_inf(); },
          [tau](const StepLambda& s) {
            std::size_t k = 0;
            while (k < s.values.size() && s.values[k] >= tau) ++k;
            if (k == 0) return ExtendedReal::neg_inf();
            if (k == s.values.size()) return ExtendedReal::pos_inf();
            return ExtendedReal(s.breaks[k - 1]);
          },
          [tau](const LogisticLambda& l) {
            if (tau <= 0.0) return ExtendedReal::pos_inf();
            if (tau >= 1.0) return ExtendedReal::neg_inf();
            return ExtendedReal(std::log((1.0 - tau) / tau) / l.a);
          },
          [tau](const ClampedLinearLambda& c) {
            if (tau <= c.floor) return ExtendedReal::pos_inf();
            if (tau > c.cap) return ExtendedReal::neg_inf();
            return ExtendedReal((tau - c.intercept) / c.slope);
          },
      },
      v_);
}

std::vector<double> LambdaSpec::breakpoints() const {
  if (const auto* s = std::get_if<StepLambda>(&v_)) return s->breaks;
  if (const auto* c = std::get_if<ClampedLinearLambda>(&v_)) {
    if (c->floor == c->cap) return {};
    return {clamp_x_cap(*c), clamp_x_floor(*c)};
  }
  return {};
}

std::vector<LambdaPiece> LambdaSpec::pieces() const {
  return std::visit(Overloaded{
                        [](const ConstantLambda& c) { return std::vector<LambdaPiece>{{-kInf, kInf, true, c.alpha}}; },
                        [](const StepLambda& s) {
                          std::vector<LambdaPiece> out;
                          for (std::size_t k = 0; k < s.values.size(); ++k) {
                            double lo = k == 0 ? -kInf : s.breaks[k - 1];
                            double hi = k == s.breaks.size() ? kInf : s.breaks[k];
                            out.push_back({lo, hi, true, s.values[k]});
                          }
                          return out;
                        },
                        [](const LogisticLambda&) { return std::vector<LambdaPiece>{{-kInf, kInf, false, 0.0}}; },
                        [](const ClampedLinearLambda& c) {
                          if (c.floor == c.cap) return std::vector<LambdaPiece>{{-kInf, kInf, true, c.cap}};
                          double xc = clamp_x_cap(c);
                          double xf = clamp_x_floor(c);
                          return std::vector<LambdaPiece>{
                              {-kInf, xc, true, c.cap}, {xc, xf, false, 0.0}, {xf, kInf, true, c.floor}};
                        },
                    },
                    v_);
}

std::pair<double, double> LambdaSpec::relevant_range() const {
  return std::visit(Overloaded{
                        [](const ConstantLambda&) { return std::pair{-1.0, 1.0}; },
                        [](const StepLambda& s) {
                          if (s.breaks.empty()) return std::pair{-1.0, 1.0};
                          return std::pair{s.breaks.front() - 1.0, s.breaks.back() + 1.0};
                        },
                        [](const LogisticLambda& l) { return std::pair{-10.0 / l.a, 10.0 / l.a}; },
                        [](const ClampedLinearLambda& c) {
                          if (c.floor == c.cap) return std::pair{-1.0, 1.0};
                          return std::pair{clamp_x_cap(c) - 1.0, clamp_x_floor(c) + 1.0};
                        },
                    },
                    v_);
}

std::vector<double> default_probe_grid(const LambdaSpec& lambda) {
  auto [lo, hi] = lambda.relevant_range();
  constexpr int n = 201;
  std::vector<double> grid;
  grid.reserve(n);
  for (int i = 0; i < n; ++i) {
    double x = lo + (hi - lo) * i / (n - 1);
    if (lambda.one_minus(x) > 0.0) grid.push_back(x);
  }
  return grid;
}

bool one_over_one_minus_convex(const LambdaSpec& lambda, const std::vector<double>& probe_grid) {
  if (lambda.is_constant()) return true;
  if (std::holds_alternative<StepLambda>(lambda.variant())) return false;

  std::vector<double> f(probe_grid.size());
  for (std::size_t i = 0; i < probe_grid.size(); ++i) {
    double om = lambda.one_minus(probe_grid[i]);
    if (!(om > 0.0)) throw std::domain_error("one_over_one_minus_convex: Lambda = 1 at a probe point");
    f[i] = 1.0 / om;
  }
  for (std::size_t i = 0; i < probe_grid.size(); ++i) {
    for (std::size_t j = i + 1; j < probe_grid.size(); ++j) {
      double mid = 0.5 * (probe_grid[i] + probe_grid[j]);
      double fm = 1.0 / lambda.one_minus(mid);
      double chord = 0.5 * (f[i] + f[j]);
      if (fm > chord + 1e-10 * std::max(1.0, std::abs(chord))) return false;
    }
  }
  return true;
}

bool one_over_one_minus_convex(const LambdaSpec& lambda) {
  return one_over_one_minus_convex(lambda, default_probe_grid(lambda));
}

}  // namespace lambdaes
