#include <benchmark/benchmark.h>

#include "lambdaes/measures.hpp"
#include "lambdaes/random_laws.hpp"
#include "lambdaes/ru_opt.hpp"

using namespace lambdaes;

namespace {

Distribution atoms(std::size_t n) {
  gen::Rng rng(7);
  return gen::discrete(rng, n);
}

}  // namespace

static void BM_Es(benchmark::State& state) {
  const auto d = atoms(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(es(d, 0.975));
}
BENCHMARK(BM_Es)->RangeMultiplier(10)->Range(10, 100000);

static void BM_LambdaEsStep(benchmark::State& state) {
  const auto d = atoms(static_cast<std::size_t>(state.range(0)));
  const auto lambda = LambdaSpec::step({-2.0, 0.0, 2.0}, {0.99, 0.95, 0.9, 0.5});
  for (auto _ : state) benchmark::DoNotOptimize(lambda_es(d, lambda).value);
}
BENCHMARK(BM_LambdaEsStep)->RangeMultiplier(10)->Range(10, 100000);

static void BM_LambdaEsLogistic(benchmark::State& state) {
  const auto d = atoms(static_cast<std::size_t>(state.range(0)));
  const auto lambda = LambdaSpec::logistic(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(lambda_es(d, lambda).value);
}
BENCHMARK(BM_LambdaEsLogistic)->RangeMultiplier(10)->Range(10, 100000);

static void BM_LambdaEsBisection(benchmark::State& state) {
  const auto d = atoms(static_cast<std::size_t>(state.range(0)));
  const auto lambda = LambdaSpec::logistic(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(lambda_es_bisection(d, lambda));
}
BENCHMARK(BM_LambdaEsBisection)->RangeMultiplier(10)->Range(10, 100000);

static void BM_PortfolioStep(benchmark::State& state) {
  gen::Rng rng(11);
  std::vector<std::vector<double>> losses(static_cast<std::size_t>(state.range(0)));
  for (auto& row : losses) row = gen::values(rng, 5);
  const auto s = ScenarioMatrix::uniform(losses);
  const auto lambda = LambdaSpec::step({1.0, 1.5}, {0.9, 0.5, 0.2});
  for (auto _ : state) benchmark::DoNotOptimize(min_portfolio_lambda_es(s, lambda, SimplexSet{}).value);
}
BENCHMARK(BM_PortfolioStep)->Arg(20)->Arg(100)->Arg(250);
BENCHMARK_MAIN();
