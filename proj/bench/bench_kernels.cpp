#include <benchmark/benchmark.h>

#include "moebius_kit/kernels.hpp"
#include "moebius_kit/random.hpp"

namespace {

using namespace moebius_kit;

const Disk kUnit{0.0, 1.0};

SampledMap bumped_square() {
  RationalMap r;
  r.numerator = {0.0, 1.0, 0.01};
  return SampledMap::rational(r, kUnit);
}

template <bool Parallel>
void BM_PhiSweep(benchmark::State& state) {
  const SampledMap f = bumped_square();
  const auto count = static_cast<std::size_t>(state.range(0));
  const kernels::TetradSource src = [](std::size_t i) {
    return kernels::draw_tetrad(kUnit, 2.0, 1, i);
  };
  for (auto _ : state) {
    auto r = Parallel ? kernels::phi_sweep_parallel(f, src, count, 2.0, 1e-6)
                      : kernels::phi_sweep_serial(f, src, count, 2.0, 1e-6);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

std::pair<std::vector<SpherePoint>, std::vector<SpherePoint>> grid(std::size_t n) {
  Rng rng(3);
  std::vector<SpherePoint> in, out;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex z = rng.in_disk(0.0, 1.0);
    in.emplace_back(z);
    out.emplace_back(z + 0.01 * z * z);
  }
  return {in, out};
}

template <bool Parallel>
void BM_Collision(benchmark::State& state) {
  const auto [in, out] = grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto r = Parallel ? kernels::find_collision_parallel(in, out, 1e-7)
                      : kernels::find_collision_serial(in, out, 1e-7);
    benchmark::DoNotOptimize(r);
  }
}

template <bool Parallel>
void BM_GapMax(benchmark::State& state) {
  const auto [in, out] = grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto r = Parallel ? kernels::max_chordal_gap_parallel(in, out)
                      : kernels::max_chordal_gap_serial(in, out);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_PhiSweep<false>)->Arg(500)->Arg(2000)->Arg(8000);
BENCHMARK(BM_PhiSweep<true>)->Arg(500)->Arg(2000)->Arg(8000);
BENCHMARK(BM_Collision<false>)->Arg(200)->Arg(800);
BENCHMARK(BM_Collision<true>)->Arg(200)->Arg(800);
BENCHMARK(BM_GapMax<false>)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_GapMax<true>)->Arg(1 << 12)->Arg(1 << 16);

BENCHMARK_MAIN();
