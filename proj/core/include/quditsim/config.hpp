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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "quditsim/layout.hpp"
#include "quditsim/physics.hpp"

namespace quditsim {

struct LayoutConfig {
  Scheme scheme = Scheme::kAuxPerQudit;
  int qudits = 2;
  int levels = 3;
  GeometryParams geometry;
  double epsilon_r = kSiliconEpsilonR;
  std::optional<double> epsilon_r_aux;
  ScreeningSpec screening;
};

struct DimScanTask {
  int total_sites = 100;
  int d_min = 2;
  int d_max = 10;
};

struct GateTask {
  std::string kind = "controlled_phase";  // k_phase | single_qudit
  std::vector<int> participants;
  double phase_rad = 0.0;
  double tolerance = 1e-3;  // infidelity target, drives the exit code
  int qudit = 0;            // single_qudit
  Eigen::MatrixXcd target;  // single_qudit
  std::vector<double> crosstalk_screenings;  // optional crosstalk scan
  std::vector<int> crosstalk_spectators;
  std::vector<double> permittivity_values;   // optional permittivity scan
};

struct SimulateTask {
  std::string schedule_file;
  std::string initial_kind = "computational";  // basis_index | computational
  std::vector<int> initial_levels;
  int initial_index = 0;
};

struct OptimizeTask {
  std::string problem = "transfer_benchmark";  // or controlled_phase_wait
  int qudit = 0;
  double perturbation = 0.2;
  int budget = 200;
  double leakage_weight = 1.0;
  int restarts = 3;
  bool refine = false;
  std::vector<int> participants;
  double phase_rad = 3.14159265358979312;
};

/// Parsed scenario: strict schema, fixed nm/meV/ps units, unknown keys
/// rejected with their JSON path.
struct ScenarioConfig {
  LayoutConfig layout;
  PhysicsParams physics;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  int threads = 1;

  std::optional<DimScanTask> dim_scan;
  std::optional<GateTask> gate;
  std::optional<SimulateTask> simulate;
  std::optional<OptimizeTask> optimize;

  /// FNV-1a hash of the raw config text, recorded in run manifests.
  std::string config_hash;
};

/// Parses and validates a scenario for one subcommand (dim-scan, gate,
/// simulate, optimize, layout). Throws ConfigError with the offending key
/// path on schema violations.
ScenarioConfig parse_scenario(const std::string& json_text,
                              const std::string& subcommand);

/// Builds the register described by the layout section.
RegisterLayout layout_from_config(const LayoutConfig& config);

}  // namespace quditsim
