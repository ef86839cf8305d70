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
#include <string>
#include <vector>

#include "quditsim/gates.hpp"

namespace quditsim {

/// Schedule knob exposed to the optimizer.
struct ParameterBinding {
  enum class Kind { kDuration, kDelta, kShift };
  Kind kind = Kind::kDuration;
  int segment = 0;
  int handle = -1;  // B- or S-gate handle id for kDelta / kShift
};

struct ParameterSpec {
  std::string name;
  ParameterBinding binding;
  double lower = 0.0;
  double upper = 0.0;
  double initial = 0.0;
};

/// Derivative-free pulse optimization problem: a base schedule with bound
/// parameters, scored by infidelity + leakage_weight * leakage against a
/// target on the computational subspace.
struct OptimizationProblem {
  ControlSchedule base_schedule;
  std::vector<ParameterSpec> parameters;
  Eigen::MatrixXcd target;
  std::vector<int> subspace;
  double leakage_weight = 1.0;
};

struct OptimizeOptions {
  int restarts = 3;
  bool refine = false;               // finite-difference coordinate descent
  double refine_step_scale = 1e-6;   // of each parameter's box range
  double simplex_scale = 0.05;       // initial simplex size, of box range
  double tolerance = 1e-12;          // simplex objective spread stop
};

struct TracePoint {
  long long iteration = 0;
  double objective = 0.0;  // best-so-far, non-increasing
  Eigen::VectorXd params;
};

struct OptimizeResult {
  Eigen::VectorXd best_params;
  double best_objective = 0.0;
  double initial_objective = 0.0;
  long long evaluations = 0;
  std::vector<TracePoint> trace;

  /// CSV with header iter,objective,<param names...>.
  std::string to_csv(const OptimizationProblem& problem) const;
};

ControlSchedule apply_parameters(const OptimizationProblem& problem,
                                 const Eigen::VectorXd& params);

/// Infidelity + leakage_weight * leakage of the parameterized schedule.
double evaluate_objective(const RegisterLayout& layout,
                          const ConfigurationBasis& basis,
                          const OptimizationProblem& problem,
                          const Eigen::VectorXd& params);

/// Seeded Nelder-Mead simplex search with restarts inside box bounds,
/// optionally refined by coordinate descent. Deterministic for a given seed;
/// the returned parameters equal the initial vector exactly when no candidate
/// improves on it. `budget` caps objective evaluations.
OptimizeResult optimize_schedule(const RegisterLayout& layout,
                                 const ConfigurationBasis& basis,
                                 const OptimizationProblem& problem,
                                 int budget, std::uint64_t seed,
                                 const OptimizeOptions& options = {});

struct CrosstalkRow {
  double screening = 0.0;  // trench residual applied to inter-qudit pairs
  int spectator = 0;
  int level = 0;
  double phase_rad = 0.0;   // residual conditional phase over the gate wait
  double infidelity = 0.0;  // full-gate infidelity including the spectators
};

struct CrosstalkReport {
  std::vector<CrosstalkRow> rows;

  /// CSV with header s,spectator,phase_rad,infidelity.
  std::string to_csv() const;
};

/// Sweeps the trench screening residual and reports, per spectator level, the
/// conditional phase the active gate imprints on the spectator during its
/// wait segments (diagonal-oracle arithmetic) plus the simulated full-gate
/// infidelity. Spectators must be disjoint from the gate participants.
/// Grid points are independent and evaluated on `threads` workers; the row
/// order is deterministic regardless.
CrosstalkReport crosstalk_scan(const RegisterLayout& layout,
                               const GateReport& gate,
                               const std::vector<double>& screening_values,
                               const std::vector<int>& spectators,
                               const PhysicsParams& physics = {},
                               int threads = 1);

struct PermittivityRow {
  double epsilon_r = 0.0;
  double delta_v_mev = 0.0;
  double pure_wait_ps = 0.0;  // |phi| hbar / |delta_v|, linear in epsilon_r
  double total_duration_ps = 0.0;
  long long max_sequential_gates = 0;
};

struct PermittivityReport {
  std::vector<PermittivityRow> rows;

  /// CSV with header epsilon_r,delta_v_mev,pure_wait_ps,total_duration_ps,
  /// max_sequential_gates.
  std::string to_csv() const;
};

/// Recompiles a phase gate for each relative permittivity (bulk and auxiliary
/// regions scaled together) and tabulates durations and coherence budgets.
PermittivityReport permittivity_speedup(const RegisterLayout& layout,
                                        const std::vector<int>& participants,
                                        double phase_rad,
                                        const std::vector<double>& epsilons,
                                        const PhysicsParams& physics = {});

}  // namespace quditsim
