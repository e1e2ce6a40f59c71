// Copyright 2026 The Capscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference versus OpenMP kernels: exhaustive enumeration and the
// non-dominated filter.

#include <cstdint>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "capscope/kernels.hpp"
#include "test_support.hpp"

namespace capscope {
namespace {

kernels::ScaledProgram program_with(std::int64_t variables) {
  testing::RandomInstanceSpec spec;
  spec.min_vars = static_cast<std::size_t>(variables);
  spec.max_vars = static_cast<std::size_t>(variables);
  spec.max_rows = 2;
  return kernels::scale_program(testing::random_instance(42, spec));
}

void BM_EnumerateSerial(benchmark::State& state) {
  const auto program = program_with(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::enumerate_serial(program));
  state.counters["assignments"] = static_cast<double>(program.space_size());
}

void BM_EnumerateParallel(benchmark::State& state) {
  const auto program = program_with(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::enumerate_parallel(program));
  state.counters["assignments"] = static_cast<double>(program.space_size());
}

std::vector<std::vector<std::int64_t>> random_points(std::int64_t n) {
  std::mt19937_64 rng(7);
  std::vector<std::vector<std::int64_t>> points;
  for (std::int64_t i = 0; i < n; ++i) {
    const auto x = static_cast<std::int64_t>(rng() % 1000);
    points.push_back({x, 1000 - x + static_cast<std::int64_t>(rng() % 50)});
  }
  return points;
}

void BM_FilterSerial(benchmark::State& state) {
  const auto points = random_points(state.range(0));
  std::span<const std::vector<std::int64_t>> view(points);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::nondominated_mask_serial(view));
}

void BM_FilterParallel(benchmark::State& state) {
  const auto points = random_points(state.range(0));
  std::span<const std::vector<std::int64_t>> view(points);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::nondominated_mask_parallel(view));
}

BENCHMARK(BM_EnumerateSerial)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateParallel)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FilterSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FilterParallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace capscope

BENCHMARK_MAIN();
