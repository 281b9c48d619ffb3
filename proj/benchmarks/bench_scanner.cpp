#include <benchmark/benchmark.h>

#include "beamk/scanner.hpp"

using namespace beamk::scanner;

static void BM_ScanDefaultRegion(benchmark::State& state) {
  const ScanOptions opts{false, static_cast<unsigned>(state.range(0)), false};
  for (auto _ : state) benchmark::DoNotOptimize(scan_psi_minus_q(ScanRegion{}, opts));
}
BENCHMARK(BM_ScanDefaultRegion)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_AuxiliaryChecks(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(auxiliary_checks(ScanRegion{}, 1.0));
}
BENCHMARK(BM_AuxiliaryChecks)->Unit(benchmark::kMillisecond);
