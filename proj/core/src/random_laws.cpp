#include "lambdaes/random_laws.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace lambdaes::gen {
namespace {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

std::vector<double> simplex_weights(Rng& rng, std::size_t m) {
  std::vector<double> w(m);
  for (double& v : w) v = uniform(rng, 0.05, 1.0);
  double s = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= s;
  return w;
}

std::vector<double> values(Rng& rng, std::size_t m, double lo, double hi) {
  std::vector<double> v(m);
  for (double& x : v) x = uniform(rng, lo, hi);
  return v;
}

Distribution discrete(Rng& rng, std::size_t k, double lo, double hi) {
  auto v = values(rng, k, lo, hi);
  auto p = simplex_weights(rng, k);
  return Distribution::discrete(v, p);
}

Distribution piecewise_linear(Rng& rng, double lo, double hi) {
  std::size_t k = pick(rng, 1, 4);
  std::vector<double> us{0.0};
  for (std::size_t i = 1; i < k; ++i) us.push_back(uniform(rng, 0.0, 1.0));
  us.push_back(1.0);
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end()), us.end());
  std::vector<double> cuts = values(rng, 2 * (us.size() - 1), lo, hi);
  std::sort(cuts.begin(), cuts.end());
  std::vector<QuantileSegment> seg;
  for (std::size_t i = 0; i + 1 < us.size(); ++i) {
    double v0 = cuts[2 * i];
    double v1 = cuts[2 * i + 1];
    if (uniform(rng, 0.0, 1.0) < 0.25) v1 = v0;
    if (!seg.empty() && uniform(rng, 0.0, 1.0) < 0.3) v0 = seg.back().v_hi;
    seg.push_back({us[i], us[i + 1], v0, std::max(v0, v1)});
  }
  return Distribution::piecewise_linear_quantile(std::move(seg));
}

Distribution law(Rng& rng) {
  if (uniform(rng, 0.0, 1.0) < 0.75) return discrete(rng, pick(rng, 1, 8));
  return piecewise_linear(rng);
}

LambdaSpec step(Rng& rng, Side side, double vmin, double vmax) {
  std::size_t q = pick(rng, 1, 4);
  auto breaks = values(rng, q, -5.0, 5.0);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  auto vals = values(rng, breaks.size() + 1, vmin, vmax);
  std::sort(vals.begin(), vals.end(), std::greater<>());
  // Occasionally hit the extremes of [vmin, vmax] exactly.
  double u = uniform(rng, 0.0, 1.0);
  if (u < 0.1) vals.front() = vmax;
  if (u > 0.9) vals.back() = vmin;
  return LambdaSpec::step(std::move(breaks), std::move(vals), side);
}

LambdaSpec right_continuous(Rng& rng) {
  switch (pick(rng, 0, 5)) {
    case 0:
      return LambdaSpec::constant(uniform(rng, 0.0, 0.99));
    case 1:
      return LambdaSpec::logistic(uniform(rng, 0.2, 3.0));
    case 2: {
      double floor = uniform(rng, 0.0, 0.5);
      double cap = uniform(rng, floor, 1.0);
      return LambdaSpec::clamped_linear(-uniform(rng, 0.05, 1.0), uniform(rng, 0.0, 1.0), floor, cap);
    }
    default:
      return step(rng, Side::right);
  }
}

LambdaSpec bounded_below_one(Rng& rng) {
  switch (pick(rng, 0, 3)) {
    case 0:
      return LambdaSpec::constant(uniform(rng, 0.0, 0.95));
    case 1: {
      double floor = uniform(rng, 0.0, 0.5);
      double cap = uniform(rng, floor, 0.95);
      return LambdaSpec::clamped_linear(-uniform(rng, 0.05, 1.0), uniform(rng, 0.0, 1.0), floor, cap);
    }
    default:
      return step(rng, Side::right, 0.0, 0.95);
  }
}

LambdaSpec any(Rng& rng) {
  if (uniform(rng, 0.0, 1.0) < 0.3) return step(rng, Side::left);
  return right_continuous(rng);
}

}  // namespace lambdaes::gen
