#include <benchmark/benchmark.h>

#include <random>

#include "obl/birkhoff.hpp"
#include "obl/horizontal.hpp"
#include "obl/table.hpp"

namespace {

obl::ConvexTable wavy_table() {
  return obl::ConvexTable::support_fourier(1.0, {{0.0, 0.0}, {0.05, 0.02},
                                                 {0.0, 0.01}});
}

obl::Polygon random_polygon(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.2, 0.2);
  std::vector<obl::Vec2> z;
  for (int i = 0; i < n; ++i) {
    double a = 2 * 3.14159265358979 * i / n + jitter(rng);
    double r = 1.0 + jitter(rng);
    z.push_back({r * std::cos(a), r * std::sin(a)});
  }
  return obl::Polygon(std::move(z));
}

void BM_RightTangency(benchmark::State& state) {
  obl::ConvexTable table = wavy_table();
  obl::Vec2 x{2.3, 0.7};
  for (auto _ : state) benchmark::DoNotOptimize(table.right_tangency(x));
}
BENCHMARK(BM_RightTangency);

void BM_OuterMapDiff(benchmark::State& state) {
  obl::ConvexTable table = wavy_table();
  obl::Vec2 x{2.3, 0.7};
  for (auto _ : state) benchmark::DoNotOptimize(table.outer_map_diff(x));
}
BENCHMARK(BM_OuterMapDiff);

void BM_FrameAndBrackets(benchmark::State& state) {
  obl::Polygon Z = random_polygon(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(obl::frame(Z));
    benchmark::DoNotOptimize(obl::lie_bracket(Z, 1, 2));
  }
}
BENCHMARK(BM_FrameAndBrackets)->Arg(3)->Arg(6)->Arg(8);

void BM_BracketRank(benchmark::State& state) {
  obl::Polygon Z = random_polygon(static_cast<int>(state.range(0)), 11);
  for (auto _ : state) benchmark::DoNotOptimize(obl::bracket_growth_rank(Z));
}
BENCHMARK(BM_BracketRank)->Arg(5)->Arg(8);

void BM_IntegrateBaseline(benchmark::State& state) {
  auto [Z0, controls] = obl::circle_baseline(5, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(obl::integrate(Z0, controls, 200));
}
BENCHMARK(BM_IntegrateBaseline);

}  // namespace

BENCHMARK_MAIN();
