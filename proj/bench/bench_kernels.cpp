// Copyright 2026 The permlcu Authors
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

// Serial vs OpenMP kernels. Arg 0 is the qubit count.

#include <random>

#include <benchmark/benchmark.h>

#include "permlcu/kernels.hpp"
#include "permlcu/models.hpp"

namespace {

using namespace permlcu;
using kernels::Exec;

// The context points into the Hamiltonian, so both live here.
struct Fixture {
  explicit Fixture(int n)
      : h(from_pauli_spec(models::random_model(n, 2, 2, 11))), ctx(make_segment(h, build_schedule(h, 1.0, 1e-3), 0)) {}
  PermExpHamiltonian h;
  SegmentContext ctx;
};

std::vector<Complex> random_vec(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Complex> v(n);
  for (auto& x : v) x = Complex(g(rng), g(rng));
  return v;
}

void BM_CoefficientTable(benchmark::State& state, Exec exec) {
  const Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::coefficient_table(f.ctx, exec));
  }
}

void BM_Accumulate(benchmark::State& state, Exec exec) {
  const Fixture f(static_cast<int>(state.range(0)));
  const CoefficientTable t = kernels::coefficient_table(f.ctx, Exec::serial);
  state.counters["terms"] = static_cast<double>(t.num_terms);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::accumulate_segment(t, exec));
  }
}

void BM_Controlled(benchmark::State& state, Exec exec) {
  const std::size_t dim = std::size_t{1} << state.range(0);
  const std::size_t blocks = 256;
  auto phases = random_vec(dim * blocks, 1);
  for (auto& p : phases) p /= std::abs(p);
  std::vector<BasisState> mask(blocks);
  for (std::size_t b = 0; b < blocks; ++b) mask[b] = static_cast<BasisState>((b * 2654435761u) % dim);
  const auto in = random_vec(dim * blocks, 2);
  std::vector<Complex> out(in.size());
  for (auto _ : state) {
    kernels::apply_controlled(phases, mask, dim, in, out, exec);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_Householder(benchmark::State& state, Exec exec) {
  const std::size_t dim = std::size_t{1} << state.range(0);
  const std::size_t anc = 256;
  auto v = random_vec(anc, 3);
  double nv = 0.0;
  for (const auto& x : v) nv += std::norm(x);
  for (auto& x : v) x /= std::sqrt(nv);
  auto amps = random_vec(dim * anc, 4);
  for (auto _ : state) {
    kernels::apply_householder(v, dim, amps, exec);
    benchmark::DoNotOptimize(amps.data());
  }
}

BENCHMARK_CAPTURE(BM_CoefficientTable, serial, Exec::serial)->DenseRange(2, 6, 2);
BENCHMARK_CAPTURE(BM_CoefficientTable, parallel, Exec::parallel)->DenseRange(2, 6, 2);
BENCHMARK_CAPTURE(BM_Accumulate, serial, Exec::serial)->DenseRange(2, 6, 2);
BENCHMARK_CAPTURE(BM_Accumulate, parallel, Exec::parallel)->DenseRange(2, 6, 2);
BENCHMARK_CAPTURE(BM_Controlled, serial, Exec::serial)->DenseRange(4, 8, 2);
BENCHMARK_CAPTURE(BM_Controlled, parallel, Exec::parallel)->DenseRange(4, 8, 2);
BENCHMARK_CAPTURE(BM_Householder, serial, Exec::serial)->DenseRange(4, 8, 2);
BENCHMARK_CAPTURE(BM_Householder, parallel, Exec::parallel)->DenseRange(4, 8, 2);

}  // namespace

BENCHMARK_MAIN();
