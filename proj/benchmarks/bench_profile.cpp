#include <benchmark/benchmark.h>

#include <cmath>

#include "fastdiff/params.hpp"
#include "fastdiff/profile.hpp"

namespace {

using namespace fastdiff;

void BM_IntegrateProfile(benchmark::State& state) {
  Params p;  // n = 3 log-diffusion defaults
  const DerivedConstants c = derive(p);
  ProfileOptions opt;
  opt.rho_max = 10.0;
  opt.rel_tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_profile(p, c, opt));
  }
}
BENCHMARK(BM_IntegrateProfile)->Arg(8)->Arg(10)->Arg(12);

void BM_IntegrateProfileFastDiffusion(benchmark::State& state) {
  Params p;
  p.n = 5;
  p.m = 0.2;
  const DerivedConstants c = derive(p);
  ProfileOptions opt;
  opt.rho_max = 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_profile(p, c, opt));
  }
}
BENCHMARK(BM_IntegrateProfileFastDiffusion);

void BM_EvalV(benchmark::State& state) {
  Params p;
  const DerivedConstants c = derive(p);
  ProfileOptions opt;
  opt.rho_max = 10.0;
  const ProfileSolution prof = integrate_profile(p, c, opt);
  double r = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(prof.v(r));
    r = r < 9.0 ? r * 1.01 : 0.1;
  }
}
BENCHMARK(BM_EvalV);

}  // namespace
