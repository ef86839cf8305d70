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

#include "quditsim/dimensions.hpp"

namespace {

using namespace quditsim;

void BM_DimensionScan(benchmark::State& state) {
  const int total_sites = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dimension_scan(total_sites, 2, 10));
  }
}
BENCHMARK(BM_DimensionScan)->Arg(100)->Arg(10000);

void BM_IntegerDimension(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        hilbert_dim_integer(10000, 3, Scheme::kSharedAux));
  }
}
BENCHMARK(BM_IntegerDimension);

}  // namespace
