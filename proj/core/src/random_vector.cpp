#include "lambdaes/random_vector.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lambdaes {

RandomVector::RandomVector(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("RandomVector: no sample points");
  double total = 0.0;
  for (double q : probs_) {
    if (!(q > 0.0) || !std::isfinite(q)) throw std::invalid_argument("RandomVector: probabilities must be positive");
    total += q;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("RandomVector: probabilities do not sum to 1");
}

RandomVector RandomVector::uniform(std::size_t m) {
  if (m == 0) throw std::invalid_argument("RandomVector: no sample points");
  // Assign 1/m to all but the last point so the sum is exact.
  std::vector<double> p(m, 1.0 / static_cast<double>(m));
  p.back() = 1.0 - std::accumulate(p.begin(), p.end() - 1, 0.0);
  return RandomVector(std::move(p));
}

std::size_t RandomVector::add(std::vector<double> values) {
  if (values.size() != probs_.size()) throw std::invalid_argument("RandomVector: wrong variable length");
  vars_.push_back(std::move(values));
  return vars_.size() - 1;
}

Distribution RandomVector::law_of(std::span<const double> values) const {
  if (values.size() != probs_.size()) throw std::invalid_argument("RandomVector: wrong variable length");
  return Distribution::discrete(values, probs_);
}

double RandomVector::expectation(std::span<const double> values) const {
  if (values.size() != probs_.size()) throw std::invalid_argument("RandomVector: wrong variable length");
  double s = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) s += probs_[j] * values[j];
  return s;
}

std::vector<double> combine(double a, std::span<const double> x, double b, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("combine: size mismatch");
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = a * x[j] + b * y[j];
  return out;
}

}  // namespace lambdaes
