#include <benchmark/benchmark.h>

#include <vector>

#include "fastdiff/exact.hpp"
#include "fastdiff/parabolic.hpp"
#include "fastdiff/params.hpp"

namespace {

using namespace fastdiff;

void BM_ImplicitSolveBarenblatt(benchmark::State& state) {
  Params p;
  p.m = 0.2;
  const BarenblattSolution bk(p, 1.0);
  const SpaceTimeField f = [&](double r, double t) { return bk(r, t); };
  const int nr = static_cast<int>(state.range(0));
  const auto grid = AnnulusGrid::make(0.1, 5.0, nr, 0.5, 100);
  std::vector<double> u0(grid.nr);
  for (int i = 0; i < grid.nr; ++i) u0[i] = bk.initial_value(grid.r[i]);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(p, grid, u0, f, f));
  }
  state.SetItemsProcessed(state.iterations() * grid.nt * grid.nr);
}
BENCHMARK(BM_ImplicitSolveBarenblatt)->Arg(101)->Arg(201)->Arg(401);

void BM_BarenblattEval(benchmark::State& state) {
  Params p;
  p.m = 0.2;
  const BarenblattSolution bk(p, 1.0);
  double r = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bk(r, 0.5));
    r = r < 5.0 ? r * 1.001 : 0.1;
  }
}
BENCHMARK(BM_BarenblattEval);

}  // namespace

BENCHMARK_MAIN();
