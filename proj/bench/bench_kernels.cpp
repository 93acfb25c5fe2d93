// Copyright 2026 The oplab Authors
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

// Serial reference vs OpenMP kernel timings. Pairs share a size argument so
// the console table lines them up; set OMP_NUM_THREADS to vary the team.

#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "oplab/kernels.hpp"
#include "oplab/linalg.hpp"
#include "oplab/random.hpp"

namespace {

using oplab::Complex;
using oplab::ComplexMatrix;
namespace serial = oplab::kernels::serial;
namespace parallel = oplab::kernels::parallel;

std::vector<double> line(std::size_t n) {
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = -1.0 + 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  return xs;
}

Complex cauchy(double x, double y) { return Complex(1.0, 0.0) / Complex(x - y, 0.25); }

template <auto Matmul>
void BM_matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  oplab::Rng rng(7);
  const auto a = rng.gaussian_matrix(n, n);
  const auto b = rng.gaussian_matrix(n, n);
  ComplexMatrix c(n, n);
  for (auto _ : state) {
    Matmul(a, b, c);
    benchmark::DoNotOptimize(c.data().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n * n * n));
}

template <auto Sample>
void BM_sample_kernel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto xs = line(n);
  ComplexMatrix out(n, n);
  const oplab::kernels::PointKernel k = cauchy;
  for (auto _ : state) {
    Sample(k, xs, xs, out);
    benchmark::DoNotOptimize(out.data().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n * n));
}

template <auto Sums>
void BM_weighted_sums(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto nodes = line(4 * n);
  const auto targets = line(n);
  std::vector<Complex> wf(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) wf[j] = std::exp(Complex(0.0, nodes[j])) / static_cast<double>(nodes.size());
  std::vector<Complex> out(n);
  const oplab::kernels::PointKernel g = cauchy;
  for (auto _ : state) {
    Sums(g, targets, nodes, wf, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n * nodes.size()));
}

template <auto Evaluate>
void BM_evaluate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto ts = line(n);
  std::vector<Complex> out(n);
  const oplab::kernels::PointFunction f = [](double t) {
    Complex s = 0.0;
    for (int k = 1; k <= 64; ++k) s += std::polar(1.0 / k, k * t);
    return s;
  };
  for (auto _ : state) {
    Evaluate(f, ts, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

template <auto Map>
void BM_map_indexed(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<Complex> out(n);
  const oplab::kernels::IndexFunction f = [n](std::size_t i) {
    const double t = static_cast<double>(i) / static_cast<double>(n);
    return std::exp(Complex(-t, 40.0 * t)) * std::log1p(t);
  };
  for (auto _ : state) {
    Map(f, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

using SampleFn = void (*)(const oplab::kernels::PointKernel&, std::span<const double>, std::span<const double>,
                          ComplexMatrix&);
constexpr SampleFn serial_sample = serial::sample_kernel;
constexpr SampleFn parallel_sample = parallel::sample_kernel;

}  // namespace

BENCHMARK(BM_matmul<serial::matmul>)->Name("matmul/serial")->RangeMultiplier(2)->Range(64, 256);
BENCHMARK(BM_matmul<parallel::matmul>)->Name("matmul/parallel")->RangeMultiplier(2)->Range(64, 256);
BENCHMARK(BM_sample_kernel<serial_sample>)->Name("sample_kernel/serial")->RangeMultiplier(4)->Range(128, 2048);
BENCHMARK(BM_sample_kernel<parallel_sample>)->Name("sample_kernel/parallel")->RangeMultiplier(4)->Range(128, 2048);
BENCHMARK(BM_weighted_sums<serial::weighted_sums>)->Name("weighted_sums/serial")->RangeMultiplier(4)->Range(128, 2048);
BENCHMARK(BM_weighted_sums<parallel::weighted_sums>)->Name("weighted_sums/parallel")->RangeMultiplier(4)->Range(128, 2048);
BENCHMARK(BM_evaluate<serial::evaluate>)->Name("evaluate/serial")->RangeMultiplier(8)->Range(1 << 10, 1 << 16);
BENCHMARK(BM_evaluate<parallel::evaluate>)->Name("evaluate/parallel")->RangeMultiplier(8)->Range(1 << 10, 1 << 16);
BENCHMARK(BM_map_indexed<serial::map_indexed>)->Name("map_indexed/serial")->RangeMultiplier(8)->Range(1 << 10, 1 << 18);
BENCHMARK(BM_map_indexed<parallel::map_indexed>)->Name("map_indexed/parallel")->RangeMultiplier(8)->Range(1 << 10, 1 << 18);

BENCHMARK_MAIN();
