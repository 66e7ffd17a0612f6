// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <map>
#include <memory>
#include <string>

#include "hurwitz/braid.hpp"
#include "hurwitz/fiber.hpp"
#include "hurwitz/io.hpp"
#include "hurwitz/nielsen.hpp"

using namespace hurwitz;

namespace {

const std::string kFiles[] = {"h25.json", "s5_221.json", "a5_c3_5.json", "a5_c3_6.json"};

struct Loaded {
  HurwitzParameter h;
  TupleSet tuples;
  std::unique_ptr<Fiber> fiber;
};

const Loaded& load(const std::string& file) {
  static std::map<std::string, Loaded> cache;
  auto it = cache.find(file);
  if (it != cache.end()) return it->second;
  Loaded l;
  l.h = load_parameter_file(std::string(HURWITZ_BENCH_DATA) + "/params/" + file, HURWITZ_BENCH_DATA).parameter;
  l.tuples = enumerate_tuples(l.h);
  l.fiber = build_fiber(l.h, l.tuples, FiberMode::kInn);
  return cache.emplace(file, std::move(l)).first->second;
}

void BM_EnumerateSerial(benchmark::State& state) {
  const auto& l = load(kFiles[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_tuples_serial(l.h).size());
  state.SetLabel(kFiles[state.range(0)]);
}

void BM_EnumerateParallel(benchmark::State& state) {
  const auto& l = load(kFiles[state.range(0)]);
  EnumerateOptions opt;
  opt.threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_tuples(l.h, opt).size());
  state.SetLabel(kFiles[state.range(0)] + " threads=" + std::to_string(state.range(1)));
}

void BM_InducedSerial(benchmark::State& state) {
  const auto& l = load(kFiles[state.range(0)]);
  auto words = braid_nu_generators(l.h.nu);
  for (auto _ : state) {
    for (const auto& w : words) benchmark::DoNotOptimize(induced_permutation_serial(*l.fiber, w));
  }
  state.SetLabel(kFiles[state.range(0)]);
}

void BM_InducedParallel(benchmark::State& state) {
  const auto& l = load(kFiles[state.range(0)]);
  auto words = braid_nu_generators(l.h.nu);
  int saved = omp_get_max_threads();
  omp_set_num_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(induced_permutations(*l.fiber, words));
  omp_set_num_threads(saved);
  state.SetLabel(kFiles[state.range(0)] + " threads=" + std::to_string(state.range(1)));
}

}  // namespace

BENCHMARK(BM_EnumerateSerial)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateParallel)->ArgsProduct({{0, 1, 2, 3}, {1, 2, 4}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InducedSerial)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InducedParallel)->ArgsProduct({{0, 1, 2, 3}, {1, 2, 4}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
