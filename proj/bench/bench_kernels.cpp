// Serial twin against the OpenMP kernel for each scan and experiment loop.
// Arg 0 is Exec::Serial, arg 1 is Exec::Parallel.

#include <benchmark/benchmark.h>

#include "aplab/graphs.hpp"
#include "aplab/harness.hpp"
#include "aplab/homology.hpp"

namespace {

aplab::Exec exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? aplab::Exec::Serial : aplab::Exec::Parallel;
}

void BM_Minkowski(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(aplab::minkowski_scan(3, 8, 3, exec_of(state)));
}
BENCHMARK(BM_Minkowski)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_AbelianPerFix(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(aplab::abelian_standing_assumptions_check(3, 4, exec_of(state)));
}
BENCHMARK(BM_AbelianPerFix)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_GraphLemma(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(aplab::graph_lemma_check(6, exec_of(state)));
}
BENCHMARK(BM_GraphLemma)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

aplab::ExperimentConfig config(const benchmark::State& state, int rank, int samples) {
  aplab::ExperimentConfig cfg;
  cfg.rank = rank;
  cfg.samples = samples;
  cfg.seed = 7;
  cfg.exec = exec_of(state);
  return cfg;
}

void BM_Conjugacy(benchmark::State& state) {
  const auto cfg = config(state, 2, 50);
  for (auto _ : state) benchmark::DoNotOptimize(aplab::run_conjugacy_experiment(cfg));
}
BENCHMARK(BM_Conjugacy)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Factors(benchmark::State& state) {
  const auto cfg = config(state, 3, 25);
  for (auto _ : state) benchmark::DoNotOptimize(aplab::run_factor_experiment(cfg));
}
BENCHMARK(BM_Factors)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Torsion(benchmark::State& state) {
  const auto cfg = config(state, 3, 100);
  for (auto _ : state) benchmark::DoNotOptimize(aplab::run_torsion_experiment(cfg));
}
BENCHMARK(BM_Torsion)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Splittings(benchmark::State& state) {
  auto cfg = config(state, 2, 10);
  cfg.splitting_pool = aplab::load_splitting_pool(std::string(APLAB_DATA_DIR) + "/splittings");
  for (auto _ : state) benchmark::DoNotOptimize(aplab::run_splitting_experiment(cfg));
}
BENCHMARK(BM_Splittings)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
