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

#include "quditsim/evolve.hpp"

namespace {

using namespace quditsim;

// Propagator cost is dominated by the per-segment eigendecomposition; sweep
// the register size (basis dimension (D+1)^N for the switched architecture).
void BM_PropagateSegment(benchmark::State& state) {
  const int qudits = static_cast<int>(state.range(0));
  const RegisterLayout layout =
      build_register(Scheme::kAuxPerQudit, qudits, 3);
  const ConfigurationBasis basis = enumerate_basis(layout);

  ControlSchedule schedule;
  ScheduleSegment segment;
  segment.duration_ps = 1.0;
  segment.controls = ControlValues::zeros(layout);
  for (double& delta : segment.controls.delta_mev) delta = 0.3;
  schedule.segments.push_back(segment);

  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate(layout, basis, schedule));
  }
  state.SetLabel("dim=" + std::to_string(basis.size()));
}
BENCHMARK(BM_PropagateSegment)->Arg(1)->Arg(2)->Arg(3)->Arg(4);

void BM_BuildHamiltonian(benchmark::State& state) {
  const int qudits = static_cast<int>(state.range(0));
  const RegisterLayout layout =
      build_register(Scheme::kAuxPerQudit, qudits, 3);
  const ConfigurationBasis basis = enumerate_basis(layout);
  ControlValues controls = ControlValues::zeros(layout);
  for (double& delta : controls.delta_mev) delta = 0.3;

  for (auto _ : state) {
    benchmark::DoNotOptimize(build_hamiltonian(layout, basis, controls));
  }
  state.SetLabel("dim=" + std::to_string(basis.size()));
}
BENCHMARK(BM_BuildHamiltonian)->Arg(2)->Arg(3)->Arg(4);

}  // namespace
