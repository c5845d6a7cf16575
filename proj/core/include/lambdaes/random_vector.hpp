#pragma once

#include <span>
#include <vector>

#include "lambdaes/distribution.hpp"

namespace lambdaes {

// Finitely many sample points with probabilities, carrying any number of
// jointly defined random variables (one value per point each).
class RandomVector {
 public:
  explicit RandomVector(std::vector<double> probs);
  static RandomVector uniform(std::size_t m);

  std::size_t size() const { return probs_.size(); }
  const std::vector<double>& probs() const { return probs_; }

  // Returns the index of the new variable.
  std::size_t add(std::vector<double> values);
  const std::vector<double>& variable(std::size_t i) const { return vars_.at(i); }
  std::size_t variable_count() const { return vars_.size(); }

  Distribution law(std::size_t i) const { return law_of(vars_.at(i)); }
  Distribution law_of(std::span<const double> values) const;
  double expectation(std::span<const double> values) const;

 private:
  std::vector<double> probs_;
  std::vector<std::vector<double>> vars_;
};

// Pointwise a*x + b*y.
std::vector<double> combine(double a, std::span<const double> x, double b, std::span<const double> y);

}  // namespace lambdaes
