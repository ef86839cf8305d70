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

#include "quditsim/evolve.hpp"
#include "quditsim/physics.hpp"

namespace quditsim {

/// Compiled gate plus its simulated verification.
struct GateReport {
  std::string gate;
  std::vector<int> participants;
  ControlSchedule schedule;
  double duration_ps = 0.0;

  double process_fidelity = 1.0;
  double avg_fidelity = 1.0;
  double leakage = 0.0;

  double target_phase_rad = 0.0;
  double realized_phase_rad = 0.0;  // conditional phase on the all-|1> state
  double delta_v_mev = 0.0;         // conditional energy rate driving the wait
  double wait_duration_ps = 0.0;
  int wait_segment = -1;

  struct PairPhase {
    int qudit_a = 0;
    int qudit_b = 0;
    double phase_rad = 0.0;
  };
  std::vector<PairPhase> pairwise_phases;
  double residual_phase_rad = 0.0;  // all-ones phase beyond pairwise terms

  double budget_fraction = 0.0;
  long long max_sequential_gates = 0;
  double t_coh_ps = 0.0;

  Eigen::MatrixXcd target;     // committed target on the computational block
  std::vector<int> subspace;   // basis indices of that block
};

struct CoherenceBudget {
  double fraction = 0.0;
  long long max_sequential_gates = 0;
};

/// Resonant pi-pulse moving population between a qudit dot and an adjacent
/// B-gated site: duration pi*hbar/(2*delta), idle levels of the qudit detuned.
/// Throws CompileError if the handle is missing or delta is out of range.
ControlSchedule transfer_pulse(const RegisterLayout& layout, int qudit,
                               int from_level, int to_site, double delta_mev,
                               const PhysicsParams& physics);

/// Compiles a controlled-phase gate imprinting `phase_rad` on the joint
/// |1...1> state of two participants: conditional transfers onto the
/// auxiliaries, a calibrated interaction wait, transfers back, and a phase
/// fixup layer cancelling all single-qudit phases.
GateReport compile_controlled_phase(const RegisterLayout& layout,
                                    const ConfigurationBasis& basis,
                                    const std::vector<int>& participants,
                                    double phase_rad,
                                    const PhysicsParams& physics = {});

/// Same protocol for k >= 2 adjacent participants. Around a shared auxiliary
/// (scheme B) the gate compiles as a dispersive drive of one mover against
/// the common auxiliary, entangling all owners; the committed target is the
/// predicted diagonal phase pattern.
GateReport compile_k_phase(const RegisterLayout& layout,
                           const ConfigurationBasis& basis,
                           const std::vector<int>& participants,
                           double phase_rad, const PhysicsParams& physics = {});

/// Decomposes a D x D unitary into nearest-neighbor two-level rotations
/// (B-gate pulses with S-gate phase layers setting the axis) plus a final
/// phase layer, and verifies the compiled schedule by simulation.
GateReport synthesize_single_qudit(const RegisterLayout& layout,
                                   const ConfigurationBasis& basis, int qudit,
                                   const Eigen::MatrixXcd& target,
                                   const PhysicsParams& physics = {});

/// Merges gate schedules acting on disjoint qudit subsets into one schedule,
/// padding shorter schedules with zero-control segments. Throws CompileError
/// on overlapping participants or shared auxiliaries.
ControlSchedule schedule_parallel(const std::vector<GateReport>& reports,
                                  const RegisterLayout& layout);

/// Duration versus coherance lifetime: fraction used and how many such gates
/// fit sequentially. Throws ModelError for non-positive durations.
CoherenceBudget coherence_budget(const GateReport& report, double t_coh_ps);

// Analysis helpers, shared with tests and the tuning module.

/// Diagonal phases of U on the computational block, indexed by computational
/// multi-index (qudit 0 most significant), wrapped to (-pi, pi].
Eigen::VectorXd computational_phases(const Propagator& u,
                                     const ConfigurationBasis& basis);

/// Conditional phase of the all-|1...1> participant state relative to
/// single-participant references (gauge level D, spectators at gauge):
/// theta(1..1) - sum_i theta(single_i) + (k-1)*theta(base), wrapped.
double conditional_phase_corner(const Eigen::VectorXd& comp_phases,
                                const std::vector<int>& participants,
                                int num_qudits, int levels);

/// Pairwise conditional phase between two participants, others at gauge.
double pairwise_phase(const Eigen::VectorXd& comp_phases, int qudit_a,
                      int qudit_b, int num_qudits, int levels);

/// Embeds a D^k x D^k gate on the given participants into the full D^N
/// computational space (participant 0 most significant within the gate).
Eigen::MatrixXcd embed_on_computational(const Eigen::MatrixXcd& gate,
                                        const std::vector<int>& participants,
                                        int num_qudits, int levels);

}  // namespace quditsim
