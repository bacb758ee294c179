#include "wten/baselines.hpp"
#include "wten/lifting.hpp"
#include "wten/reference.hpp"
#include "wten/walgebra.hpp"

#include <benchmark/benchmark.h>

namespace {

wten::Tensor3 cube(wten::Index p, std::uint64_t seed) { return wten::Tensor3::random_uniform(p, p, p, seed); }

void BM_ForwardReference(benchmark::State& state) {
  const wten::Tensor3 a = cube(state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(wten::reference::forward_w(a, wten::max_levels(a.slices())));
}

void BM_ForwardKernel(benchmark::State& state) {
  const wten::Tensor3 a = cube(state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(wten::forward_w(a, wten::max_levels(a.slices())));
}

void BM_WProductReference(benchmark::State& state) {
  const wten::Tensor3 a = cube(state.range(0), 1), b = cube(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(wten::reference::w_product(a, b, wten::max_levels(a.slices())));
}

void BM_WProduct(benchmark::State& state) {
  const wten::Tensor3 a = cube(state.range(0), 1), b = cube(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(wten::w_product(a, b, wten::max_levels(a.slices())));
}

void BM_TProduct(benchmark::State& state) {
  const wten::Tensor3 a = cube(state.range(0), 1), b = cube(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(wten::t_product(a, b));
}

void BM_MProduct(benchmark::State& state) {
  const wten::Tensor3 a = cube(state.range(0), 1), b = cube(state.range(0), 2);
  const wten::ModeTransform dct = wten::ModeTransform::dct(a.slices());
  for (auto _ : state) benchmark::DoNotOptimize(wten::m_product(a, b, dct));
}

}  // namespace

BENCHMARK(BM_ForwardReference)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ForwardKernel)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WProductReference)->RangeMultiplier(2)->Range(16, 64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WProduct)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TProduct)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MProduct)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
