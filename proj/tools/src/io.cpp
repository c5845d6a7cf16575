#include "lambdaes_cli/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace lambdaes::cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool to_double(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

double need_double(std::string_view s, std::size_t line) {
  double v = 0.0;
  if (!to_double(s, v)) throw ParseError("line " + std::to_string(line) + ": not a number: '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t k = s.find(sep, start);
    out.push_back(trim(s.substr(start, k == std::string_view::npos ? std::string_view::npos : k - start)));
    if (k == std::string_view::npos) break;
    start = k + 1;
  }
  return out;
}

struct Row {
  std::size_t line;
  std::vector<std::string_view> cells;
};

std::vector<Row> csv_rows(std::string_view text) {
  std::vector<Row> rows;
  std::size_t line = 0;
  for (auto raw : split(text, '\n')) {
    ++line;
    auto s = trim(raw);
    if (s.empty() || s.front() == '#') continue;
    rows.push_back({line, split(s, ',')});
  }
  return rows;
}

bool is_header(const Row& row) {
  double v = 0.0;
  for (auto c : row.cells) {
    if (!to_double(c, v)) return true;
  }
  return false;
}

void normalise(std::vector<double>& p) {
  double s = 0.0;
  for (double v : p) {
    if (v < 0.0) throw ParseError("negative probability");
    s += v;
  }
  if (std::abs(s - 1.0) > 1e-6) throw ParseError("probabilities sum to " + format_number(s) + ", not 1");
  for (double& v : p) v /= s;
}

std::vector<double> number_array(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array())
    throw ParseError(std::string("lambda: '") + key + "' must be an array");
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) throw ParseError(std::string("lambda: '") + key + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

double number(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw ParseError(std::string("lambda: '") + key + "' must be a number");
  return j.at(key).get<double>();
}

void only_keys(const Json& j, std::initializer_list<const char*> keys) {
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) throw ParseError("lambda: unknown key '" + k + "'");
  }
}

void dump(const Json& j, int indent, int depth, std::string& out) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(k).dump();
        out += indent < 0 ? ":" : ": ";
        dump(v, indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += indent < 0 ? "," : ", ";
        first = false;
        dump(v, indent, depth + 1, out);
      }
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      double v = j.get<double>();
      out += std::isfinite(v) ? format_number(v) : '"' + format_number(v) + '"';
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

Distribution parse_distribution_csv(std::string_view text) {
  auto rows = csv_rows(text);
  if (!rows.empty() && is_header(rows.front())) rows.erase(rows.begin());
  if (rows.empty()) throw ParseError("distribution: no rows");
  std::vector<double> v;
  std::vector<double> p;
  for (const auto& r : rows) {
    if (r.cells.size() != 2) throw ParseError("line " + std::to_string(r.line) + ": expected value,prob");
    v.push_back(need_double(r.cells[0], r.line));
    p.push_back(need_double(r.cells[1], r.line));
  }
  normalise(p);
  try {
    return Distribution::discrete(v, p);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("distribution: ") + e.what());
  }
}

ScenarioMatrix parse_scenarios_csv(std::string_view text) {
  auto rows = csv_rows(text);
  if (rows.empty()) throw ParseError("scenarios: no rows");
  bool has_prob = false;
  std::vector<std::string> names;
  if (is_header(rows.front())) {
    const auto& h = rows.front().cells;
    has_prob = !h.empty() && h.front() == "prob";
    for (std::size_t k = has_prob ? 1 : 0; k < h.size(); ++k) names.emplace_back(h[k]);
    rows.erase(rows.begin());
  }
  if (rows.empty()) throw ParseError("scenarios: no data rows");
  const std::size_t width = rows.front().cells.size();
  if (width < (has_prob ? 2u : 1u)) throw ParseError("scenarios: no asset columns");
  if (!names.empty() && names.size() + (has_prob ? 1 : 0) != width)
    throw ParseError("scenarios: header width mismatch");
  std::vector<std::vector<double>> losses;
  std::vector<double> probs;
  for (const auto& r : rows) {
    if (r.cells.size() != width) throw ParseError("line " + std::to_string(r.line) + ": ragged row");
    std::size_t k = 0;
    if (has_prob) probs.push_back(need_double(r.cells[k++], r.line));
    std::vector<double> row;
    for (; k < width; ++k) row.push_back(need_double(r.cells[k], r.line));
    losses.push_back(std::move(row));
  }
  try {
    if (!has_prob) return ScenarioMatrix::uniform(std::move(losses), std::move(names));
    normalise(probs);
    return ScenarioMatrix(std::move(losses), std::move(probs), std::move(names));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("scenarios: ") + e.what());
  }
}

LambdaSpec lambda_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) throw ParseError("lambda: missing \"type\"");
  const auto type = j.at("type").get<std::string>();
  try {
    if (type == "constant") {
      only_keys(j, {"type", "alpha"});
      return LambdaSpec::constant(number(j, "alpha"));
    }
    if (type == "step") {
      only_keys(j, {"type", "breaks", "values", "side"});
      Side side = Side::right;
      if (j.contains("side")) {
        const auto& s = j.at("side");
        if (s == "left")
          side = Side::left;
        else if (s != "right")
          throw ParseError("lambda: side must be \"left\" or \"right\"");
      }
      return LambdaSpec::step(number_array(j, "breaks"), number_array(j, "values"), side);
    }
    if (type == "logistic") {
      only_keys(j, {"type", "a"});
      return LambdaSpec::logistic(number(j, "a"));
    }
    if (type == "clamped_linear") {
      only_keys(j, {"type", "slope", "intercept", "floor", "cap"});
      return LambdaSpec::clamped_linear(number(j, "slope"), number(j, "intercept"), number(j, "floor"),
                                        number(j, "cap"));
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("lambda: ") + e.what());
  }
  throw ParseError("lambda: unknown type '" + type + "'");
}

LambdaSpec parse_lambda_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("lambda: ") + e.what());
  }
  return lambda_from_json(j);
}

Json lambda_to_json(const LambdaSpec& lambda) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ConstantLambda>) {
          return {{"type", "constant"}, {"alpha", v.alpha}};
        } else if constexpr (std::is_same_v<T, StepLambda>) {
          return {{"type", "step"},
                  {"breaks", v.breaks},
                  {"values", v.values},
                  {"side", v.side == Side::right ? "right" : "left"}};
        } else if constexpr (std::is_same_v<T, LogisticLambda>) {
          return {{"type", "logistic"}, {"a", v.a}};
        } else {
          return {{"type", "clamped_linear"},
                  {"slope", v.slope},
                  {"intercept", v.intercept},
                  {"floor", v.floor},
                  {"cap", v.cap}};
        }
      },
      lambda.variant());
}

std::vector<double> parse_levels(std::string_view text) {
  std::vector<double> out;
  for (auto cell : split(text, ',')) {
    double v = 0.0;
    if (!to_double(cell, v) || v < 0.0 || v > 1.0)
      throw ParseError("levels: '" + std::string(cell) + "' is not in [0,1]");
    out.push_back(v);
  }
  return out;
}

GridSpec parse_grid(std::string_view text) {
  auto parts = split(text, ':');
  double lo = 0.0;
  double hi = 0.0;
  double n = 0.0;
  if (parts.size() != 3 || !to_double(parts[0], lo) || !to_double(parts[1], hi) || !to_double(parts[2], n) ||
      n != std::floor(n)) {
    throw ParseError("grid: expected lo:hi:n");
  }
  if (n < 1.0 || lo > hi || (n > 1.0 && lo == hi)) throw ParseError("grid: empty grid");
  return {lo, hi, static_cast<std::size_t>(n)};
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump_json(const Json& j, int indent) {
  std::string out;
  dump(j, indent, 0, out);
  return out;
}

}  // namespace lambdaes::cli
