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

#pragma once

#include <string>
#include <vector>

#include "quditsim/config.hpp"

namespace quditsim {

// CLI exit codes: 0 success, 2 config error, 3 compile error, 4 tolerance
// not met.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitCompileError = 3;
inline constexpr int kExitToleranceNotMet = 4;

struct CommandResult {
  int exit_code = kExitOk;
  std::vector<std::string> files;  // artifact paths relative to the out dir
  std::string summary;
};

/// Emits the dimension-analysis dataset (three curves over the D range at
/// fixed K) plus an argmax summary line per scheme.
CommandResult cmd_dim_scan(const ScenarioConfig& config);

/// Compiles and simulates a gate, writing the report and schedule JSON.
/// Exit code 4 when the simulated infidelity exceeds the tolerance.
CommandResult cmd_gate(const ScenarioConfig& config);

/// Replays an explicit schedule file on an initial state, writing final
/// amplitudes, leakage and per-configuration phases.
CommandResult cmd_simulate(const ScenarioConfig& config);

/// Runs the pulse optimizer on a named benchmark problem, writing the trace
/// CSV and the optimized schedule.
CommandResult cmd_optimize(const ScenarioConfig& config);

/// Emits the register layout JSON and a site-table CSV.
CommandResult cmd_layout(const ScenarioConfig& config);

/// Serializes a layout to the JSON layout schema.
std::string layout_to_json(const RegisterLayout& layout);

}  // namespace quditsim
