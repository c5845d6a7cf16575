#pragma once

#include <random>
#include <vector>

#include "lambdaes/distribution.hpp"
#include "lambdaes/lambda.hpp"

namespace lambdaes::gen {

using Rng = std::mt19937_64;

// k atoms with values in [lo, hi] and random positive weights.
Distribution discrete(Rng& rng, std::size_t k, double lo = -5.0, double hi = 5.0);
// 1-4 quantile segments, mixing flat and sloped pieces with occasional jumps.
Distribution piecewise_linear(Rng& rng, double lo = -5.0, double hi = 5.0);
// Discrete with probability 0.75, otherwise piecewise linear.
Distribution law(Rng& rng);

// Random positive weights summing to 1.
std::vector<double> simplex_weights(Rng& rng, std::size_t m);
std::vector<double> values(Rng& rng, std::size_t m, double lo = -5.0, double hi = 5.0);

// 1-4 breaks in [-5, 5], values nonincreasing in [vmin, vmax].
LambdaSpec step(Rng& rng, Side side, double vmin = 0.0, double vmax = 1.0);
// Any right-continuous variant (constant, step, logistic, clamped linear).
LambdaSpec right_continuous(Rng& rng);
// Right-continuous with sup Lambda < 1 attained nowhere near 1 (max 0.95).
LambdaSpec bounded_below_one(Rng& rng);
// Any variant, either side for steps.
LambdaSpec any(Rng& rng);

}  // namespace lambdaes::gen
