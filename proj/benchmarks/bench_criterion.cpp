#include <benchmark/benchmark.h>

#include <cmath>

#include "pfunc/criterion.hpp"
#include "pfunc/paper_examples.hpp"

using namespace pfunc;

namespace {

Fn1 allen_cahn() {
  return {"s^3-s", [](double s) { return s * s * s - s; }, [](double s) { return 3 * s * s - 1; },
          [](double s) { return 6 * s; }};
}

void BM_CorollaryEx1(benchmark::State& state) {
  const ExampleInstance ex = paper_example(Ex1{allen_cahn(), std::nullopt});
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_corollary_semilinear(ex.pfunction.P, allen_cahn(), Rect{{-2, 2}, {0, 2}}, 41, 41));
  }
}
BENCHMARK(BM_CorollaryEx1)->Unit(benchmark::kMillisecond);

void BM_Ex2Construction(benchmark::State& state) {
  const Fn1 f("e^-s", [](double s) { return std::exp(-s); }, [](double s) { return -std::exp(-s); },
              [](double s) { return std::exp(-s); });
  for (auto _ : state) {
    const ExampleInstance ex = paper_example(Ex2{f, Interval{-5, 5}});
    benchmark::DoNotOptimize(ex.pfunction.P(1.5, 0.5));
  }
}
BENCHMARK(BM_Ex2Construction)->Unit(benchmark::kMillisecond);

void BM_NestedSquareIntegral(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(nested_square_integral([](double z) { return std::exp(-z); }, 2.0));
  }
}
BENCHMARK(BM_NestedSquareIntegral);

}  // namespace
