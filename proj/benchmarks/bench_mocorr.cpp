#include <benchmark/benchmark.h>

#include "mocorr/binned_operator.hpp"
#include "mocorr/block_maxima.hpp"
#include "mocorr/ecdf.hpp"
#include "mocorr/maxcorr.hpp"
#include "mocorr/parallel.hpp"
#include "mocorr/samplers.hpp"
#include "mocorr/variance.hpp"

using namespace mocorr;

static void BM_SampleCopula(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_copula(CopulaParams(0.5, 0.3), n, RngStream{1, 0}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleCopula)->Arg(1 << 16)->Arg(1 << 20);

static void BM_SampleMO(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_mo(MOParams(1, 2, 0.5), n, RngStream{1, 0}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleMO)->Arg(1 << 20);

static void BM_BinPairs(benchmark::State& state) {
  const auto s = sample_copula(CopulaParams(0.5, 0.5), 1000000, RngStream{2, 0});
  for (auto _ : state) benchmark::DoNotOptimize(bin_pairs(s, 64));
}
BENCHMARK(BM_BinPairs);

static void BM_SecondSingularValue(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto op = bin_pairs(sample_copula(CopulaParams(0.6, 0.4), 10 * m * m * 10, RngStream{3, 0}), m);
  for (auto _ : state) benchmark::DoNotOptimize(second_singular_value(op));
}
BENCHMARK(BM_SecondSingularValue)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_EstimateMaxCorr(benchmark::State& state) {
  const auto s = sample_copula(CopulaParams(0.25, 0.49), kDefaultMaxCorrSamples, RngStream{4, 0});
  for (auto _ : state) benchmark::DoNotOptimize(estimate_max_corr(s));
}
BENCHMARK(BM_EstimateMaxCorr)->Unit(benchmark::kMillisecond);

static void BM_HoeffdingQuadrature(benchmark::State& state) {
  const CopulaParams c(0.3, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(hoeffding_power_cov(c, PowerIndex(2, 1)));
}
BENCHMARK(BM_HoeffdingQuadrature)->Unit(benchmark::kMicrosecond);

static void BM_EcdfKS(benchmark::State& state) {
  const CopulaParams c(0.5, 0.5);
  const auto s = sample_copula(c, static_cast<std::size_t>(state.range(0)), RngStream{5, 0});
  for (auto _ : state)
    benchmark::DoNotOptimize(ecdf_ks(s, [&](double u, double v) { return copula_cdf(c, u, v); }));
}
BENCHMARK(BM_EcdfKS)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_Sigma2SB(benchmark::State& state) {
  const GEVShape g(0.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(sigma2_sb(Functional::identity(), g, default_zeta_quadrature(),
                                       static_cast<std::size_t>(state.range(0)), RngStream{6, 0}));
}
BENCHMARK(BM_Sigma2SB)->Arg(20000)->Unit(benchmark::kMillisecond);

static void BM_BlockSimSliding(benchmark::State& state) {
  const auto dist = BlockDistribution::parse("exp");
  for (auto _ : state)
    benchmark::DoNotOptimize(block_maxima_simulate(dist, 1000, 500, BlockMode::sliding,
                                                   Functional::identity(), RngStream{7, 0}));
}
BENCHMARK(BM_BlockSimSliding)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
