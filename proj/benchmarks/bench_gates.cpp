// Copyright 2026 The quditsim Authors
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

#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "quditsim/gates.hpp"

namespace {

using namespace quditsim;

void BM_CompileControlledPhase(benchmark::State& state) {
  const RegisterLayout layout = build_register(Scheme::kAuxPerQudit, 2, 3);
  const ConfigurationBasis basis = enumerate_basis(layout);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compile_controlled_phase(
        layout, basis, {0, 1}, std::numbers::pi));
  }
}
BENCHMARK(BM_CompileControlledPhase);

void BM_SynthesizeSingleQutrit(benchmark::State& state) {
  const RegisterLayout layout = build_register(Scheme::kAlwaysOn, 1, 3);
  const ConfigurationBasis basis = enumerate_basis(layout);
  // Cyclic level permutation as a representative non-trivial target.
  Eigen::MatrixXcd target = Eigen::MatrixXcd::Zero(3, 3);
  target(1, 0) = 1.0;
  target(2, 1) = 1.0;
  target(0, 2) = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        synthesize_single_qudit(layout, basis, 0, target));
  }
}
BENCHMARK(BM_SynthesizeSingleQutrit);

}  // namespace
