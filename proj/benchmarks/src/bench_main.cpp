#include "cusp/foliation.hpp"
#include "cusp/parse.hpp"
#include "cusp/resolution.hpp"
#include "cusp/separatrix.hpp"
#include "cusp/topology.hpp"

#include <benchmark/benchmark.h>

using namespace cusp;

namespace {

TruncSeries series(const char* text) { return TruncSeries::exact(parse_univariate(text, "u")); }

void BM_PolyMul(benchmark::State& state) {
  const VarList v{"x", "y", "z"};
  const int n = static_cast<int>(state.range(0));
  const SparsePoly base = parse_poly("1 + x + 2*y - z/3 + x*y*z", v);
  SparsePoly f = base.pow(static_cast<unsigned>(n));
  for (auto _ : state) benchmark::DoNotOptimize(f * f);
  state.SetLabel(std::to_string(f.terms().size()) + " terms");
}
BENCHMARK(BM_PolyMul)->Arg(2)->Arg(4)->Arg(6);

void BM_SeriesSqrt(benchmark::State& state) {
  const TruncSeries f(parse_univariate("4 + u - 3*u^2 + u^5", "u"), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(series_sqrt_unit(f, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SeriesSqrt)->Arg(16)->Arg(64);

void BM_Resolve(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const int q = static_cast<int>(state.range(1));
  const int k = static_cast<int>(state.range(2));
  const CuspidalFoliation f = build_omega(p, q, k, series("1+u"));
  for (auto _ : state) benchmark::DoNotOptimize(resolve(f));
}
BENCHMARK(BM_Resolve)->Args({2, 2, 2})->Args({4, 6, 2})->Args({2, 3, 1})->Args({3, 5, 1})->Args({4, 4, 1})
    ->Unit(benchmark::kMillisecond);

void BM_Separatrix(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const int n = static_cast<int>(state.range(2));
  for (auto _ : state) benchmark::DoNotOptimize(solve_formal_separatrix(d, k, series("1+u"), n));
}
BENCHMARK(BM_Separatrix)->Args({3, 2, 16})->Args({6, 1, 16})->Args({4, 2, 32});

void BM_Census(benchmark::State& state) {
  const ResolvedModel m = resolve(build_omega(3, 5, 1, series("1")));
  for (auto _ : state) {
    DivisorGraph g = build_divisor_graph(m);
    component_topologies(g);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_Census);

}  // namespace

BENCHMARK_MAIN();
