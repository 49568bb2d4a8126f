#include <benchmark/benchmark.h>

#include <vector>

#include "dirprior/bounds.hpp"
#include "dirprior/dirichlet.hpp"
#include "dirprior/elicitation.hpp"
#include "dirprior/prior_checks.hpp"
#include "dirprior/relative_belief.hpp"
#include "dirprior/special_functions.hpp"

using namespace dirprior;

namespace {

const std::vector<double> kExample4Alpha{11.03, 11.03, 9.11, 9.11, 9.11, 9.11, 18.71, 18.71, 9.11};
const std::vector<std::int64_t> kTable1{983, 679, 134, 383, 416, 84, 2892, 2625, 570};

void BM_DirichletSample(benchmark::State& state) {
  const DirichletParams d(std::vector<double>(static_cast<std::size_t>(state.range(0)), 3.0));
  Rng rng(1);
  std::vector<double> p(d.k());
  for (auto _ : state) {
    sample_into(d, rng, p);
    benchmark::DoNotOptimize(p.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_DirichletSample)->Arg(2)->Arg(4)->Arg(9)->Arg(36);

void BM_ContentEstimate(benchmark::State& state) {
  const SubSimplex region =
      from_lower_bounds(std::vector<double>{0.02, 0.02, 0.0, 0.0, 0.0, 0.0, 0.10, 0.10, 0.0});
  const DirichletParams d(kExample4Alpha);
  Rng rng(2);
  const auto draws = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(content_estimate(d, region, draws, rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ContentEstimate)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_ElicitExample3(benchmark::State& state) {
  const SubSimplex region = from_lower_bounds(std::vector<double>{0.2, 0.2, 0.3, 0.2});
  ElicitationConfig cfg;
  cfg.draws = 10000;
  for (auto _ : state) {
    Rng rng(3);
    benchmark::DoNotOptimize(elicit(region, std::nullopt, cfg, rng));
  }
}
BENCHMARK(BM_ElicitExample3)->Unit(benchmark::kMillisecond);

void BM_Psi(benchmark::State& state) {
  const ContingencyShape shape(3, 3);
  const DirichletParams d(kExample4Alpha);
  Rng rng(4);
  const std::vector<double> p = sample(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(kl_independence_psi(p, shape));
}
BENCHMARK(BM_Psi);

void BM_LogDirichletMultinomial(benchmark::State& state) {
  const DirichletParams d(kExample4Alpha);
  const CountVector f(kTable1);
  for (auto _ : state) benchmark::DoNotOptimize(log_dirichlet_multinomial(d, f));
}
BENCHMARK(BM_LogDirichletMultinomial);

void BM_IncompleteBeta(benchmark::State& state) {
  const double a = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(regularized_incomplete_beta(a, a, 0.48));
}
BENCHMARK(BM_IncompleteBeta)->Arg(2)->Arg(12)->Arg(4000);

void BM_RBAnalysis(benchmark::State& state) {
  const DirichletParams d(kExample4Alpha);
  const CountVector f(kTable1);
  const ContingencyShape shape(3, 3);
  Rng rng(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rb_analysis(d, f, shape, 0.01, 10000, 10000, rng));
  }
}
BENCHMARK(BM_RBAnalysis)->Unit(benchmark::kMillisecond);

void BM_ConflictPValue(benchmark::State& state) {
  const DirichletParams d(kExample4Alpha);
  const CountVector f(kTable1);
  Rng rng(6);
  for (auto _ : state) benchmark::DoNotOptimize(conflict_pvalue(d, f, 1000, rng));
}
BENCHMARK(BM_ConflictPValue)->Unit(benchmark::kMillisecond);

void BM_BiasReport(benchmark::State& state) {
  const DirichletParams d(kExample4Alpha);
  BiasConfig cfg;
  cfg.n = 8766;
  cfg.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    Rng rng(7);
    benchmark::DoNotOptimize(bias_report(d, ContingencyShape(3, 3), 0.01, cfg, rng));
  }
}
BENCHMARK(BM_BiasReport)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
BENCHMARK_MAIN();
