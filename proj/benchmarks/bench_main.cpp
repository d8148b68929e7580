#include <benchmark/benchmark.h>

#include "fermatsym/curvedb.hpp"
#include "fermatsym/freypipe.hpp"
#include "fermatsym/localobs.hpp"
#include "fermatsym/ntkernel.hpp"

namespace {

using namespace fermatsym;

void BM_Jacobi(benchmark::State& state) {
  Int n = 1;
  for (auto _ : state) {
    int acc = 0;
    for (int m = 3; m < 2001; m += 2) acc += jacobi(n, m);
    benchmark::DoNotOptimize(acc);
    n += 7;
  }
}
BENCHMARK(BM_Jacobi);

void BM_FactorSmall(benchmark::State& state) {
  const Int n = Int(999'983) * 999'979 * 12;
  for (auto _ : state) benchmark::DoNotOptimize(factor_small(n));
}
BENCHMARK(BM_FactorSmall);

// q = kp + 1 with k = range(0).
void BM_FastSubgroup(benchmark::State& state) {
  const DiagonalForm form{3, 8, 21, 1009};
  Int q;
  for (Int k = state.range(0);; k += 2) {
    if (is_prime(k * 1009 + 1)) {
      q = k * 1009 + 1;
      break;
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(solvable_mod_q_fast(form, q));
  state.SetLabel("q=" + q.str());
}
BENCHMARK(BM_FastSubgroup)->Arg(2)->Arg(50)->Arg(200);

void BM_HenselSearch(benchmark::State& state) {
  const DiagonalForm form{3, 8, 21, 11};
  const Int ell = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(solvable_over_Ql(form, ell));
}
BENCHMARK(BM_HenselSearch)->Arg(2)->Arg(3)->Arg(7)->Arg(11);

void BM_RunEquation(benchmark::State& state) {
  const auto book = ScenarioBook::embedded();
  const auto db = CurveDatabase::embedded();
  for (auto _ : state) benchmark::DoNotOptimize(run_equation({3, 8, 21}, book, db));
}
BENCHMARK(BM_RunEquation)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sweep(3, 8, 21, 11, state.range(0), {200, 1}));
}
BENCHMARK(BM_Sweep)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
