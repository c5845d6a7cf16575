#pragma once

#include <span>
#include <utility>
#include <vector>

namespace lambdaes {

// One linear piece of the left-quantile function: q(u) runs from v_lo to v_hi
// as u runs over (u_lo, u_hi]. A flat piece (v_lo == v_hi) is an atom.
struct QuantileSegment {
  double u_lo;
  double u_hi;
  double v_lo;
  double v_hi;
};

// Law of a bounded loss. Discrete and piecewise-linear-quantile laws share
// one representation: a nondecreasing piecewise-linear quantile on [0,1].
class Distribution {
 public:
  // Atoms within 1e-12 are merged. Probabilities must be > 0 and sum to 1
  // within 1e-12.
  static Distribution discrete(std::span<const double> values, std::span<const double> probs);
  static Distribution point_mass(double c);
  // Segments must partition [0,1] in order with a nondecreasing quantile.
  static Distribution piecewise_linear_quantile(std::vector<QuantileSegment> segments);

  const std::vector<QuantileSegment>& segments() const { return seg_; }
  bool is_discrete() const;
  // Atoms of a discrete law as (value, prob); throws for a law with a linear piece.
  std::vector<std::pair<double, double>> atoms() const;

  double cdf(double x) const;       // P(X <= x)
  double cdf_left(double x) const;  // P(X < x)
  // Left quantile inf{x : F(x) >= u} for u in (0,1].
  double quantile_left(double u) const;
  // Right quantile inf{x : F(x) > u} for u in [0,1).
  double quantile_right(double u) const;
  // Integral of the left quantile over [u, 1].
  double upper_integral(double u) const;

  double mean() const { return upper_integral(0.0); }
  double ess_inf() const { return seg_.front().v_lo; }
  double ess_sup() const { return seg_.back().v_hi; }
  double stop_loss(double t) const;  // E[(X - t)+]
  // E[X | X >= t]; throws std::domain_error when P(X >= t) = 0.
  double conditional_tail_expectation(double t) const;

  // Sorted distinct x-values where the CDF jumps or changes slope.
  std::vector<double> breakpoints() const;

  // Law of a*X + b for a >= 0.
  Distribution affine(double a, double b) const;

 private:
  explicit Distribution(std::vector<QuantileSegment> seg);
  std::size_t segment_at_or_after(double u) const;

  std::vector<QuantileSegment> seg_;
  std::vector<double> tail_;  // tail_[k] = integral of q over segments k..end
};

// Law with CDF gamma*F + (1-gamma)*G.
Distribution mixture(const Distribution& f, const Distribution& g, double gamma);

// Increasing convex order: E[(X-t)+] >= E[(Y-t)+] - 1e-12 for all t.
bool icx_dominates(const Distribution& x, const Distribution& y);

}  // namespace lambdaes
