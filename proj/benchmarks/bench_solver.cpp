#include <benchmark/benchmark.h>

#include <cmath>

#include "pfunc/banded.hpp"
#include "pfunc/solver.hpp"

using namespace pfunc;

namespace {

double zero2(double, double) { return 0.0; }

void BM_BandLU(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const std::size_t n = m * m;
  for (auto _ : state) {
    BandLU A(n, m, m);
    for (std::size_t r = 0; r < n; ++r) {
      A.add(r, r, -4.0);
      if (r % m) A.add(r, r - 1, 1.0);
      if ((r + 1) % m) A.add(r, r + 1, 1.0);
      if (r >= m) A.add(r, r - m, 1.0);
      if (r + m < n) A.add(r, r + m, 1.0);
    }
    A.factor();
    std::vector<double> b(n, 1.0);
    A.solve(b);
    benchmark::DoNotOptimize(b.data());
  }
}
BENCHMARK(BM_BandLU)->Arg(31)->Arg(63)->Unit(benchmark::kMillisecond);

void BM_NewtonExpDecay(benchmark::State& state) {
  const Fn2 F("e^-s", [](double s, double) { return std::exp(-s); },
              Fn2::Derivatives{[](double s, double) { return -std::exp(-s); }, zero2,
                               [](double s, double) { return std::exp(-s); }, zero2, zero2});
  const int cells = static_cast<int>(state.range(0));
  const Grid2 g = Grid2::box(0, 1, 0, 1, cells, cells);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_gradient_semilinear(F, g, [](double, double) { return 1.0; }));
  }
}
BENCHMARK(BM_NewtonExpDecay)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_KinkProfile(benchmark::State& state) {
  const EquationSpec eq{"ac", Semilinear{Fn1("s^3-s", [](double s) { return s * s * s - s; },
                                             [](double s) { return 3 * s * s - 1; }, [](double s) { return 6 * s; })}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_profile(eq, 0.0, 1.0 / std::sqrt(2.0), 1e-3, Interval{-5, 5}));
  }
}
BENCHMARK(BM_KinkProfile)->Unit(benchmark::kMillisecond);

}  // namespace
