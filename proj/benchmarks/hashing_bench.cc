//
// Copyright 2026 The privlsh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "privlsh/lsh.hpp"
#include "privlsh/mechanisms.hpp"
#include "privlsh/random.hpp"
#include "privlsh/vectors.hpp"

namespace privlsh {
namespace {

// A vector of dimension n with about density * n nonzero Gaussian entries.
DenseVector RandomInput(std::size_t n, double density, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::bernoulli_distribution keep(density);
  std::normal_distribution<double> value;
  std::vector<double> v(n, 0.0);
  for (double& x : v) {
    if (keep(gen)) x = value(gen);
  }
  v[0] = 1.0;
  return *DenseVector::Create(std::move(v));
}

void BM_HashDense(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const int kappa = static_cast<int>(state.range(1));
  const ProjectionFamily family = *ProjectionFamily::Sample(n, kappa, 1);
  const Vector x = RandomInput(n, 0.01, 2);
  for (auto _ : state) benchmark::DoNotOptimize(family.Hash(x));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_HashDense)->ArgsProduct({{1000, 10000}, {20, 64}});

void BM_HashSparse(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const int kappa = static_cast<int>(state.range(1));
  const ProjectionFamily family = *ProjectionFamily::Sample(n, kappa, 1);
  const Vector x = SparseVector::FromDense(RandomInput(n, 0.01, 2));
  for (auto _ : state) benchmark::DoNotOptimize(family.Hash(x));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_HashSparse)->ArgsProduct({{1000, 10000}, {20, 64}});

void BM_Lshrr(benchmark::State& state) {
  const int kappa = static_cast<int>(state.range(0));
  const ProjectionFamily family = *ProjectionFamily::Sample(1000, kappa, 1);
  const Vector x = SparseVector::FromDense(RandomInput(1000, 0.02, 3));
  CounterRng rng(4);
  for (auto _ : state) benchmark::DoNotOptimize(Lshrr(family, 1.0, x, rng));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Lshrr)->Arg(20)->Arg(64);

void BM_LaplaceNoise(benchmark::State& state) {
  const std::size_t n = state.range(0);
  CounterRng rng(5);
  for (auto _ : state) benchmark::DoNotOptimize(LaplaceNoise(1.0, n, rng));
}
BENCHMARK(BM_LaplaceNoise)->Arg(100)->Arg(1000);

}  // namespace
}  // namespace privlsh
