#include <benchmark/benchmark.h>

#include "beamk/charfun.hpp"

using namespace beamk::charfun;

static void BM_Psi(benchmark::State& state) {
  double k = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(psi(k, 2.8));
    k = k < 50.0 ? k + 0.37 : 0.01;
  }
}
BENCHMARK(BM_Psi);

static void BM_PsiPrime(benchmark::State& state) {
  double k = 0.013;
  for (auto _ : state) {
    benchmark::DoNotOptimize(psi_prime(k, 2.8));
    k = k < 50.0 ? k + 0.37 : 0.013;
  }
}
BENCHMARK(BM_PsiPrime);

static void BM_GInverse(benchmark::State& state) {
  double t = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(g_inverse(t, 0.05));
    t = t < 40.0 ? t + 0.77 : 0.1;
  }
}
BENCHMARK(BM_GInverse);
