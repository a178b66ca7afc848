// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "effacengine/commands.hpp"
#include "effacengine/linalg.hpp"

using namespace effacengine;

namespace {

template <class F>
Matrix<F> random_matrix(const F& k, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Matrix<F> m(k, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = k.random_small(rng, 4);
  return m;
}

template <class F, bool Parallel>
void BM_rref(benchmark::State& state, F k) {
  auto n = static_cast<std::size_t>(state.range(0));
  auto m = random_matrix(k, n, 42);
  for (auto _ : state) {
    auto e = Parallel ? rref_parallel(m, n) : rref_serial(m, n);
    benchmark::DoNotOptimize(e.pivots.data());
  }
  state.SetComplexityN(state.range(0));
}

void BM_rref_serial_F5(benchmark::State& s) { BM_rref<PrimeField, false>(s, PrimeField(5)); }
void BM_rref_parallel_F5(benchmark::State& s) { BM_rref<PrimeField, true>(s, PrimeField(5)); }
void BM_rref_serial_Q(benchmark::State& s) { BM_rref<Rationals, false>(s, Rationals()); }
void BM_rref_parallel_Q(benchmark::State& s) { BM_rref<Rationals, true>(s, Rationals()); }

BENCHMARK(BM_rref_serial_F5)->RangeMultiplier(2)->Range(16, 256);
BENCHMARK(BM_rref_parallel_F5)->RangeMultiplier(2)->Range(16, 256);
BENCHMARK(BM_rref_serial_Q)->RangeMultiplier(2)->Range(8, 32);
BENCHMARK(BM_rref_parallel_Q)->RangeMultiplier(2)->Range(8, 32);

void BM_suite(benchmark::State& state) {
  std::vector<AnyScenario> all = builtin_scenarios();
  std::vector<AnyScenario> small;
  for (const auto& s : all)
    if (scenario_name(s).rfind("triangular3", 0) != 0) small.push_back(s);
  CheckOptions o;
  o.parallel = state.range(0) != 0;
  for (auto _ : state) {
    auto r = cmd_check(small, o);
    benchmark::DoNotOptimize(r.checks.size());
  }
  state.SetLabel(o.parallel ? "parallel" : "serial");
}

BENCHMARK(BM_suite)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
