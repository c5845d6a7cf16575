#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace lambdaes {

// Outcome of one property check. For a property the theory asserts,
// failures must be 0. For a counterexample (expect_violation), failures > 0
// with a witness is the expected outcome. mismatches counts reproduced values
// that disagree with their closed forms.
struct PropertyReport {
  std::string name;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  std::uint64_t mismatches = 0;
  std::uint64_t seed = 0;
  bool expect_violation = false;
  bool skipped = false;
  std::string note;
  std::vector<std::pair<std::string, double>> witness;

  bool passed() const {
    if (skipped) return true;
    if (mismatches != 0) return false;
    return expect_violation ? failures > 0 : failures == 0;
  }
  void record(const std::string& key, double value) { witness.emplace_back(key, value); }
  // First recorded value under key; throws std::out_of_range if absent.
  double at(const std::string& key) const;
};

}  // namespace lambdaes
