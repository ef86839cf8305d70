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

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "quditsim/schedule.hpp"

namespace quditsim {

using StateVector = Eigen::VectorXcd;
using Propagator = Eigen::MatrixXcd;

struct EvolveOptions {
  /// Test hook: scales the Hamiltonian of every segment; -1 evolves under the
  /// negated Hamiltonian (time reversal).
  double hamiltonian_sign = 1.0;
};

/// Exact propagator of a piecewise-constant schedule,
/// U = prod_k exp(-i H_k t_k / hbar), rightmost segment first in time. Each
/// exponential comes from a Hermitian eigendecomposition, so unitarity holds
/// to machine precision regardless of segment length.
Propagator propagate(const RegisterLayout& layout,
                     const ConfigurationBasis& basis,
                     const ControlSchedule& schedule,
                     const EvolveOptions& options = {});

/// Applies a propagator to a state; checks dimensions and norm preservation.
StateVector evolve_state(const StateVector& psi, const Propagator& u);

struct FidelityReport {
  double process_fidelity = 0.0;
  double average_fidelity = 0.0;
  double leakage = 0.0;
  /// Global phase stripped from U before comparison, radians in (-pi, pi].
  double global_phase_rad = 0.0;
};

/// Compares U restricted to a subspace against a target unitary of matching
/// dimension. `subspace` lists the basis indices spanning the computational
/// block, in target row/column order. Global phase is factored out.
FidelityReport gate_fidelity(const Propagator& u,
                             const Eigen::MatrixXcd& target,
                             const std::vector<int>& subspace);

/// Extracts the support of a diagonal projector matrix (entries 0/1), checking
/// Hermiticity and idempotency. Throws ModelError otherwise.
std::vector<int> projector_subspace(const Eigen::MatrixXcd& projector);

/// Population outside the computational subspace, 1 - <psi|P|psi>.
double leakage_profile(const StateVector& psi,
                       const std::vector<int>& subspace);

/// Per-configuration phases of a diagonal-only evolution (all tunneling off):
/// theta_c = -E_c t / hbar, wrapped to (-pi, pi]. Independent oracle for the
/// phases the full propagator must reproduce.
Eigen::VectorXd diagonal_phase_oracle(const RegisterLayout& layout,
                                      const ConfigurationBasis& basis,
                                      const ControlValues& controls,
                                      double duration_ps);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double radians);

}  // namespace quditsim
