#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lambdaes/distribution.hpp"
#include "lambdaes/lambda.hpp"
#include "lambdaes/ru_opt.hpp"

namespace lambdaes::cli {

// Malformed input; maps to exit code 2.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

std::string read_file(const std::string& path);
// Writes to a temporary sibling and renames it over path.
void write_file_atomic(const std::string& path, const std::string& content);

// Rows "value,prob"; an optional non-numeric header, blank lines and '#'
// comments are skipped. Probabilities within 1e-6 of summing to 1 are
// renormalised.
Distribution parse_distribution_csv(std::string_view text);
// Header row optional. If its first column is named "prob" that column holds
// the scenario probabilities, otherwise scenarios are equally likely and every
// column is an asset loss.
ScenarioMatrix parse_scenarios_csv(std::string_view text);

// {"type": "constant", "alpha": a}
// {"type": "step", "breaks": [...], "values": [...], "side": "right"|"left"}
// {"type": "logistic", "a": a}
// {"type": "clamped_linear", "slope": s, "intercept": b, "floor": f, "cap": c}
LambdaSpec parse_lambda_json(std::string_view text);
LambdaSpec lambda_from_json(const Json& j);
Json lambda_to_json(const LambdaSpec& lambda);

std::vector<double> parse_levels(std::string_view text);

struct GridSpec {
  double lo;
  double hi;
  std::size_t n;
};
GridSpec parse_grid(std::string_view text);  // "lo:hi:n"

// %.17g; infinities become "inf" / "-inf".
std::string format_number(double v);
// Serialises with format_number for every float; non-finite floats are
// written as strings.
std::string dump_json(const Json& j, int indent = 2);

}  // namespace lambdaes::cli
