#include "lambdaes/extended_real.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace lambdaes {

ExtendedReal::ExtendedReal(double v) : v_(v) {
  if (std::isnan(v)) throw std::invalid_argument("ExtendedReal: NaN");
}

ExtendedReal::Kind ExtendedReal::kind() const {
  if (std::isinf(v_)) return v_ > 0 ? Kind::pos_inf : Kind::neg_inf;
  return Kind::finite;
}

double ExtendedReal::value() const {
  if (!is_finite()) throw std::domain_error("ExtendedReal::value on infinite value");
  return v_;
}

ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b) {
  if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf())) {
    throw std::domain_error("ExtendedReal: inf - inf");
  }
  return ExtendedReal(a.v_ + b.v_);
}

std::string ExtendedReal::to_string() const {
  if (is_pos_inf()) return "inf";
  if (is_neg_inf()) return "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v_);
  return buf;
}

ExtendedReal min(const ExtendedReal& a, const ExtendedReal& b) { return b < a ? b : a; }
ExtendedReal max(const ExtendedReal& a, const ExtendedReal& b) { return a < b ? b : a; }

ExtendedReal nonneg_ratio(double num, double den) {
  if (num < 0 || den < 0) throw std::domain_error("nonneg_ratio: negative argument");
  if (den == 0) return num == 0 ? ExtendedReal(0.0) : ExtendedReal::pos_inf();
  return ExtendedReal(num / den);
}

}  // namespace lambdaes
