#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lambdaes/measures.hpp"
#include "lambdaes_cli/commands.hpp"
#include "lambdaes_cli/io.hpp"

using namespace lambdaes;
using namespace lambdaes::cli;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("lambdaes_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& content) {
    auto p = (dir_ / name).string();
    std::ofstream(p) << content;
    return p;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "lambdaes");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return run(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

const char* kStepLambda = R"({"type": "step", "breaks": [1.0, 1.5], "values": [0.9, 0.5, 0.2]})";

}  // namespace

TEST(Io, DistributionCsv) {
  auto d = parse_distribution_csv("value,prob\n# demo\n0,0.5\n2,0.5\n");
  EXPECT_DOUBLE_EQ(d.mean(), 1.0);
  EXPECT_NO_THROW(parse_distribution_csv("1,0.3\n2,0.7\n"));
  EXPECT_THROW(parse_distribution_csv("1,0.3\n2,0.3\n"), ParseError);
  EXPECT_THROW(parse_distribution_csv("1,abc\n"), ParseError);
  EXPECT_THROW(parse_distribution_csv(""), ParseError);
  EXPECT_THROW(parse_distribution_csv("1,-0.5\n2,1.5\n"), ParseError);
}

TEST(Io, ScenariosCsv) {
  auto s = parse_scenarios_csv("a,b\n1,0\n0,1\n2,2\n");
  EXPECT_EQ(s.assets(), 2u);
  EXPECT_EQ(s.scenarios(), 3u);
  EXPECT_NEAR(s.probs()[0], 1.0 / 3.0, 1e-15);
  auto w = parse_scenarios_csv("prob,a\n0.25,1\n0.75,3\n");
  EXPECT_EQ(w.assets(), 1u);
  EXPECT_DOUBLE_EQ(w.probs()[1], 0.75);
  EXPECT_THROW(parse_scenarios_csv("1,2\n3\n"), ParseError);
}

TEST(Io, LambdaJson) {
  auto l = parse_lambda_json(kStepLambda);
  EXPECT_DOUBLE_EQ(l(1.2), 0.5);
  EXPECT_EQ(lambda_to_json(l), lambda_to_json(lambda_from_json(lambda_to_json(l))));
  EXPECT_DOUBLE_EQ(parse_lambda_json(R"({"type":"constant","alpha":0.3})")(7.0), 0.3);
  EXPECT_THROW(parse_lambda_json(R"({"type":"constant","alpha":0.3,"extra":1})"), ParseError);
  EXPECT_THROW(parse_lambda_json(R"({"type":"wavy"})"), ParseError);
  EXPECT_THROW(parse_lambda_json(R"({"type":"constant","alpha":1.5})"), ParseError);
  EXPECT_THROW(parse_lambda_json("{"), ParseError);
}

TEST(Io, LevelsGridNumbers) {
  EXPECT_EQ(parse_levels("0.5,0.9"), (std::vector<double>{0.5, 0.9}));
  EXPECT_THROW(parse_levels("0.5,1.2"), ParseError);
  EXPECT_THROW(parse_levels("x"), ParseError);
  auto g = parse_grid("-1:3:5");
  EXPECT_DOUBLE_EQ(g.lo, -1.0);
  EXPECT_EQ(g.n, 5u);
  EXPECT_THROW(parse_grid("1:0:0"), ParseError);
  EXPECT_THROW(parse_grid("1:2"), ParseError);
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST_F(CliTest, ComputeDemo) {
  auto dist = file("d.csv", "0,0.5\n2,0.5\n");
  auto lam = file("l.json", kStepLambda);
  auto out = path("r.json");
  ASSERT_EQ(run_cli({"compute", "--dist", dist, "--lambda", lam, "--out", out}), kOk) << err_.str();
  auto j = Json::parse(read_file(out));
  EXPECT_DOUBLE_EQ(j["lambda_es"].get<double>(), 1.5);
  EXPECT_TRUE(j["crossing_certificate"]["holds"].get<bool>());
  EXPECT_FALSE(fs::exists(out + ".tmp"));
}

TEST_F(CliTest, ComputeDegenerateAndConstant) {
  auto one = file("one.csv", "3.25,1\n");
  auto lam = file("l.json", kStepLambda);
  ASSERT_EQ(run_cli({"compute", "--dist", one, "--lambda", lam}), kOk);
  auto j = Json::parse(out_.str());
  EXPECT_DOUBLE_EQ(j["lambda_es"].get<double>(), 3.25);
  EXPECT_DOUBLE_EQ(j["lambda_var"].get<double>(), 3.25);
  for (const auto& v : j["es_at_levels"]) EXPECT_DOUBLE_EQ(v.get<double>(), 3.25);

  auto d = file("d.csv", "-1,0.2\n0,0.3\n4,0.5\n");
  auto c = file("c.json", R"({"type":"constant","alpha":0.6})");
  ASSERT_EQ(run_cli({"compute", "--dist", d, "--lambda", c, "--levels", "0.6"}), kOk);
  auto k = Json::parse(out_.str());
  EXPECT_NEAR(k["lambda_es"].get<double>(), k["es_at_levels"][0].get<double>(), 1e-15);
}

TEST_F(CliTest, ComputeRoundTripIsIdempotent) {
  auto dist = file("d.csv", "0.1,0.3\n0.7,0.3\n2.2,0.4\n");
  auto lam = file("l.json", R"({"type":"logistic","a":1.3})");
  auto first = path("first.json");
  ASSERT_EQ(run_cli({"compute", "--dist", dist, "--lambda", lam, "--out", first}), kOk);
  auto j = Json::parse(read_file(first));
  auto lam2 = file("l2.json", dump_json(j["lambda"]));
  auto second = path("second.json");
  ASSERT_EQ(run_cli({"compute", "--dist", dist, "--lambda", lam2, "--out", second}), kOk);
  EXPECT_EQ(read_file(first), read_file(second));
  EXPECT_EQ(dump_json(Json::parse(read_file(first))) + "\n", read_file(first));
}

TEST_F(CliTest, ParseErrors) {
  auto bad = file("bad.csv", "0,0.5\n2,zz\n");
  auto lam = file("l.json", kStepLambda);
  EXPECT_EQ(run_cli({"compute", "--dist", bad, "--lambda", lam}), kParseError);
  EXPECT_FALSE(err_.str().empty());
  EXPECT_EQ(run_cli({"compute", "--dist", path("missing.csv"), "--lambda", lam}), kParseError);
  EXPECT_EQ(run_cli({"compute", "--bogus"}), kParseError);
  auto d = file("d.csv", "0,1\n");
  EXPECT_EQ(run_cli({"curve", "--dist", d, "--lambda", lam, "--grid", "0:1:0"}), kParseError);
}

TEST_F(CliTest, Curve) {
  auto dist = file("d.csv", "0,0.5\n2,0.5\n");
  auto lam = file("l.json", kStepLambda);
  ASSERT_EQ(run_cli({"curve", "--dist", dist, "--lambda", lam}), kOk);
  std::istringstream in(out_.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,es_level,min_es_x,is_x_star");
  int rows = 0;
  int flagged = 0;
  double best = -1e300;
  while (std::getline(in, line)) {
    ++rows;
    std::istringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    ASSERT_EQ(cells.size(), 4u);
    best = std::max(best, std::stod(cells[2]));
    if (cells[3] == "1") ++flagged;
  }
  EXPECT_GE(rows, 401);
  EXPECT_EQ(flagged, 1);
  // The supremum is approached from the left of the jump at 1.5, so only to grid spacing 0.01.
  EXPECT_LE(best, 1.5);
  EXPECT_NEAR(best, 1.5, 0.01 + 1e-12);
}

TEST_F(CliTest, OptimizeModes) {
  auto sc = file("s.csv", "a,b\n1,0\n0,1\n2,2\n");
  auto c = file("c.json", R"({"type":"constant","alpha":0.5})");
  ASSERT_EQ(run_cli({"optimize", "--scenarios", sc, "--lambda", c}), kOk) << err_.str();
  auto j = Json::parse(out_.str());
  EXPECT_NEAR(j["value"].get<double>(), 1.5, 1e-8);
  EXPECT_NEAR(j["reevaluated_lambda_es"].get<double>(), j["value"].get<double>(), 1e-6);

  auto one = file("one.csv", "a\n0\n2\n");
  auto lam = file("l.json", kStepLambda);
  ASSERT_EQ(run_cli({"optimize", "--scenarios", one, "--lambda", lam}), kOk);
  EXPECT_NEAR(Json::parse(out_.str())["value"].get<double>(), 1.5, 1e-9);

  ASSERT_EQ(run_cli({"optimize", "--scenarios", sc, "--lambda", lam, "--ell", "10", "--levels", "0.5"}), kOk);
  EXPECT_NEAR(Json::parse(out_.str())["value"].get<double>(), 1.5, 1e-8);
  EXPECT_EQ(run_cli({"optimize", "--scenarios", sc, "--lambda", lam, "--ell", "0.5"}), kInfeasible);

  auto cfg = file("cfg.json", R"({"box": {"lo": [0, 0], "hi": [0.2, 0.2], "budget": true}})");
  EXPECT_EQ(run_cli({"optimize", "--scenarios", sc, "--lambda", c, "--feasible", "box", "--config", cfg}), kInfeasible);
  auto bad_cfg = file("bad.json", R"({"tolerance": 1})");
  EXPECT_EQ(run_cli({"optimize", "--scenarios", sc, "--lambda", c, "--config", bad_cfg}), kParseError);
}

TEST_F(CliTest, Verify) {
  auto single = path("a1.json");
  ASSERT_EQ(run_cli({"verify", "--only", "a1", "--out", single}), kOk) << err_.str();
  EXPECT_EQ(out_.str().rfind("pass a1", 0), 0u);
  auto j = Json::parse(read_file(single));
  EXPECT_TRUE(j["passed"].get<bool>());
  ASSERT_EQ(j["reports"].size(), 1u);
  EXPECT_EQ(j["reports"][0]["name"], "a1");

  EXPECT_EQ(run_cli({"verify", "--only", "no_such_check"}), kParseError);

  auto out = path("v.json");
  EXPECT_EQ(run_cli({"verify", "--out", out}), kPropertyFailure);
  auto full = Json::parse(read_file(out));
  for (const auto& r : full["reports"]) {
    EXPECT_EQ(r["passed"].get<bool>(), r["name"] != "a2") << r["name"];
  }
  auto out2 = path("v2.json");
  run_cli({"verify", "--out", out2});
  EXPECT_EQ(read_file(out), read_file(out2));
}
