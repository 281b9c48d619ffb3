#include <benchmark/benchmark.h>

#include "beamk/spectral.hpp"

using namespace beamk;

static void BM_Discretize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spectral::discretize(BeamConfig::unit(), n));
}
BENCHMARK(BM_Discretize)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_EigenSpectrum(benchmark::State& state) {
  const auto m = spectral::discretize(BeamConfig::unit(), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spectral::eigen_spectrum(m));
}
BENCHMARK(BM_EigenSpectrum)->Arg(100)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);
