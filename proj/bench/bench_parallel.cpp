// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "opradius/ensembles.hpp"
#include "opradius/functionals.hpp"
#include "opradius/harness.hpp"

using namespace opradius;

namespace {

FuzzConfig fuzz_config(std::size_t trials) {
  FuzzConfig cfg;
  cfg.ensemble.trials = trials;
  cfg.ensemble.seed = 42;
  return cfg;
}

Matrix oracle_operand(int dim) {
  const SemiHilbertSpace s = SemiHilbertSpace::build(random_psd(dim, dim, 7));
  return s.compress_unchecked(random_in_BA(s, 11));
}

void BM_FuzzSerial(benchmark::State& state) {
  const FuzzConfig cfg = fuzz_config(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_fuzz_serial(cfg).entries.size());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FuzzParallel(benchmark::State& state) {
  const FuzzConfig cfg = fuzz_config(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_fuzz(cfg).entries.size());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_OracleSerial(benchmark::State& state) {
  const Matrix m = oracle_operand(static_cast<int>(state.range(0)));
  OracleOptions opt;
  for (auto _ : state) benchmark::DoNotOptimize(sampling_oracle_serial(m, opt).sampled);
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(opt.samples));
}

void BM_OracleParallel(benchmark::State& state) {
  const Matrix m = oracle_operand(static_cast<int>(state.range(0)));
  OracleOptions opt;
  for (auto _ : state) benchmark::DoNotOptimize(sampling_oracle_parallel(m, opt).sampled);
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(opt.samples));
}

}  // namespace

BENCHMARK(BM_FuzzSerial)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FuzzParallel)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleSerial)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleParallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
