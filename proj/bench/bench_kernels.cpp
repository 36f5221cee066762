// Copyright 2026 The mpindex Authors
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

// Serial reference against the OpenMP kernel for each parallel code path.
// Run with OMP_NUM_THREADS set to compare scaling.

#include <benchmark/benchmark.h>

#include "mpindex/cocycle.hpp"
#include "mpindex/fock.hpp"
#include "mpindex/generators.hpp"
#include "mpindex/orbifold.hpp"

using namespace mpindex;

namespace {

std::vector<AlgebraElement> psi_args(int terms) {
  Rng rng(7);
  const Monomial target = random_fixed_point_element(rng, 2, 1);
  std::vector<AlgebraElement> args(3, AlgebraElement(2));
  for (int t = 0; t < terms; ++t) {
    const auto closing = random_closing_tuple(rng, 3, target);
    for (int j = 0; j < 3; ++j) args[j] += AlgebraElement(closing[j]) + AlgebraElement(random_monomial(rng, 2));
  }
  return args;
}

void BM_psi_serial(benchmark::State& state) {
  const auto args = psi_args(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(psi_serial(1, args));
}
void BM_psi_parallel(benchmark::State& state) {
  const auto args = psi_args(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(psi(1, args));
}
BENCHMARK(BM_psi_serial)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_psi_parallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_classes_serial(benchmark::State& state) {
  const OrbifoldSpec spec{6, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_classes_serial(spec, static_cast<int>(state.range(0))));
}
void BM_classes_parallel(benchmark::State& state) {
  const OrbifoldSpec spec{6, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_classes(spec, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_classes_serial)->Arg(3)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_classes_parallel)->Arg(3)->Arg(8)->Unit(benchmark::kMillisecond);

const std::vector<double> kGrid = geometric_grid(0.1, 1.0, 12);

void BM_heat_serial(benchmark::State& state) {
  const FockSpace space(1, static_cast<int>(state.range(0)));
  const auto b = fock_T(space, CVector::Constant(1, Complex(0.6, -0.3)));
  for (auto _ : state) benchmark::DoNotOptimize(heat_trace_samples_serial(b, kGrid));
}
void BM_heat_parallel(benchmark::State& state) {
  const FockSpace space(1, static_cast<int>(state.range(0)));
  const auto b = fock_T(space, CVector::Constant(1, Complex(0.6, -0.3)));
  for (auto _ : state) benchmark::DoNotOptimize(heat_trace_samples(b, kGrid));
}
BENCHMARK(BM_heat_serial)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_heat_parallel)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

std::vector<Monomial> worked_tuple() {
  return {Monomial::translation(CVector::Constant(1, Complex(-1, -1))), Monomial::translation(CVector::Constant(1, 1.0)),
          Monomial::translation(CVector::Constant(1, Complex(0, 1)))};
}

void BM_supertrace_serial(benchmark::State& state) {
  const FockSpace space(1, static_cast<int>(state.range(0)));
  const auto t = worked_tuple();
  for (auto _ : state) benchmark::DoNotOptimize(cm_supertrace_samples_serial(space, t, kGrid));
}
void BM_supertrace_parallel(benchmark::State& state) {
  const FockSpace space(1, static_cast<int>(state.range(0)));
  const auto t = worked_tuple();
  for (auto _ : state) benchmark::DoNotOptimize(cm_supertrace_samples(space, t, kGrid));
}
BENCHMARK(BM_supertrace_serial)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_supertrace_parallel)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
