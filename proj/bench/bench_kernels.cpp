#include <benchmark/benchmark.h>

#include <random>

#include "corona/generate.hpp"
#include "corona/hardy.hpp"
#include "corona/potential.hpp"
#include "corona/quad.hpp"

using namespace corona;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

const CoronaInstance& instance(std::size_t nvars) {
  static const CoronaInstance one = [] {
    GenerateOptions g;
    g.rows = 2;
    g.cols = 4;
    g.degree = 2;
    g.seed = 1;
    return generate_instance(g);
  }();
  static const CoronaInstance two = [] {
    GenerateOptions g;
    g.rows = 1;
    g.cols = 3;
    g.nvars = 2;
    g.seed = 2;
    return generate_instance(g);
  }();
  return nvars == 1 ? one : two;
}

void BM_IdentityGrid(benchmark::State& state) {
  const CoronaInstance& inst = instance(1);
  const auto points = polydisk_grid(1, disk_grid(17, 32, 0.99));
  for (auto _ : state) benchmark::DoNotOptimize(check_identities_grid(inst.F, points, 1e-5, exec_of(state)));
}

void BM_PotentialSweep(benchmark::State& state) {
  const CoronaInstance& inst = instance(2);
  for (auto _ : state) benchmark::DoNotOptimize(verify_potentials(inst, 16, exec_of(state)));
}

void BM_DiskIntegral(benchmark::State& state) {
  const CoronaInstance& inst = instance(1);
  const DiskQuadrature Q = make_quadrature(64, 128);
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_disk(Q, [&](cplx z) {
      const Point p{z};
      return laplacian_phi(inst.F, p);
    }, exec_of(state)));
  }
}

void BM_PiFieldApply(benchmark::State& state) {
  const CoronaInstance& inst = instance(2);
  const PiField Pi(inst.F, 32);
  FourierTensor x(2, 32, inst.m());
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  for (auto& c : x.data()) c = cplx(nd(rng), nd(rng));
  for (auto _ : state) benchmark::DoNotOptimize(Pi.apply(x, exec_of(state)));
}

void BM_DeltaRange(benchmark::State& state) {
  const CoronaInstance& inst = instance(1);
  for (auto _ : state) benchmark::DoNotOptimize(delta_range(inst.F, 32, exec_of(state)));
}

}  // namespace

BENCHMARK(BM_IdentityGrid)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PotentialSweep)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DiskIntegral)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PiFieldApply)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DeltaRange)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
