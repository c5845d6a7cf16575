#pragma once

#include <compare>
#include <limits>
#include <string>

namespace lambdaes {

// A value in [-inf, +inf]. NaN is rejected at construction so the order is total.
class ExtendedReal {
 public:
  enum class Kind { neg_inf, finite, pos_inf };

  ExtendedReal() = default;
  ExtendedReal(double v);  // NOLINT(google-explicit-constructor)

  static ExtendedReal neg_inf() { return ExtendedReal(-std::numeric_limits<double>::infinity()); }
  static ExtendedReal pos_inf() { return ExtendedReal(std::numeric_limits<double>::infinity()); }

  Kind kind() const;
  bool is_finite() const { return kind() == Kind::finite; }
  bool is_neg_inf() const { return kind() == Kind::neg_inf; }
  bool is_pos_inf() const { return kind() == Kind::pos_inf; }

  // Throws std::domain_error for an infinite value.
  double value() const;
  // Infinite values map to +-std::numeric_limits<double>::infinity().
  double to_double() const { return v_; }

  friend std::partial_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b) { return a.v_ <=> b.v_; }
  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) { return a.v_ == b.v_; }

  ExtendedReal operator-() const { return ExtendedReal(-v_); }
  // inf + (-inf) is undefined and throws.
  friend ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b);
  friend ExtendedReal operator-(const ExtendedReal& a, const ExtendedReal& b) { return a + (-b); }

  std::string to_string() const;

 private:
  double v_ = 0.0;
};

ExtendedReal min(const ExtendedReal& a, const ExtendedReal& b);
ExtendedReal max(const ExtendedReal& a, const ExtendedReal& b);

// num / den for num >= 0, den >= 0 with 0/0 = 0 and x/0 = +inf for x > 0.
ExtendedReal nonneg_ratio(double num, double den);

}  // namespace lambdaes
