#include <benchmark/benchmark.h>

#include <cmath>

#include "pfunc/grid.hpp"

using namespace pfunc;

namespace {

Field2 sin_field(int cells) {
  return Field2::sample(Grid2::box(0, 1, 0, 1, cells, cells),
                        [](double x, double y) { return std::sin(3 * x) * std::sin(2 * y); });
}

void BM_Laplacian(benchmark::State& state) {
  const Field2 u = sin_field(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(laplacian(u));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(u.values().size()));
}
BENCHMARK(BM_Laplacian)->Arg(64)->Arg(128)->Arg(256);

void BM_Biharmonic(benchmark::State& state) {
  const Field2 u = sin_field(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(biharmonic(u));
}
BENCHMARK(BM_Biharmonic)->Arg(64)->Arg(128);

void BM_MaDrift(benchmark::State& state) {
  const Field2 u = Field2::sample(Grid2::box(-0.5, 0.5, -0.5, 0.5, static_cast<int>(state.range(0)), static_cast<int>(state.range(0))),
                                  [](double x, double y) { return 0.5 * (x * x + y * y) + 0.1 * std::exp(x); });
  for (auto _ : state) benchmark::DoNotOptimize(ma_drift(u));
}
BENCHMARK(BM_MaDrift)->Arg(64)->Arg(128);

void BM_BallAverage(benchmark::State& state) {
  const Field2 u = sin_field(256);
  for (auto _ : state) benchmark::DoNotOptimize(ball_average(u, 0.5, 0.5, 0.4));
}
BENCHMARK(BM_BallAverage);

}  // namespace
