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

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "quditsim/basis.hpp"
#include "quditsim/layout.hpp"
#include "quditsim/physics.hpp"

namespace quditsim {

/// Control electrode values for one time segment: tunneling amplitudes per
/// B-gate handle (meV, >= 0) and on-site shifts per S-gate handle (meV).
struct ControlValues {
  std::vector<double> delta_mev;  // indexed by B-gate handle id
  std::vector<double> shift_mev;  // indexed by S-gate handle id

  static ControlValues zeros(const RegisterLayout& layout);

  double& delta(const RegisterLayout& layout, int site_a, int site_b);
  double& shift_at_site(const RegisterLayout& layout, int site);
};

/// Validates sizes, finiteness and caps (0 <= delta <= delta_max,
/// |shift| <= shift_max). Throws ModelError on violation.
void validate_controls(const RegisterLayout& layout,
                       const ControlValues& controls,
                       const PhysicsParams& physics);

/// Dense Hermitian Hamiltonian over a configuration basis, with term metadata.
struct HamiltonianModel {
  Eigen::MatrixXcd matrix;  // meV

  // Term decomposition of the diagonal.
  Eigen::VectorXd diag_onsite_mev;
  Eigen::VectorXd diag_coulomb_mev;

  struct HopTerm {
    int row = 0;
    int col = 0;
    int b_gate = 0;  // handle whose amplitude produced this element
  };
  std::vector<HopTerm> hops;

  /// CSV triplets `row,col,re,im` of all nonzero elements.
  std::string to_csv() const;
};

/// Assembles H = sum of on-site shifts + Coulomb diagonal - hopping terms.
/// Off-diagonal elements are -delta between configurations differing in
/// exactly one qudit's occupied site across a B-gated pair.
HamiltonianModel build_hamiltonian(const RegisterLayout& layout,
                                   const ConfigurationBasis& basis,
                                   const ControlValues& controls);

/// Diagonal energy of one configuration under given controls (meV):
/// occupied-site shifts plus static Coulomb energy.
double diagonal_energy(const RegisterLayout& layout,
                       const ConfigurationBasis& basis,
                       const ControlValues& controls, int config_index);

/// First-order inclusion-exclusion of configuration energies over the
/// participants: V(on) - sum_i V(only participant i on) + (k-1) V(ref).
/// For k = 2 this is V(on,on) - V(on,ref) - V(ref,on) + V(ref,ref), the
/// conditional energy whose accumulated phase entangles the participants.
/// `on` and `ref` must agree outside the participants.
double differential_phase_rate(const RegisterLayout& layout,
                               const ConfigurationBasis& basis,
                               std::span<const int> participants,
                               const Configuration& on,
                               const Configuration& ref);

/// Canonical aux-vs-parked rate: `on` puts each participant on its primary
/// auxiliary, `ref` parks every electron on its level-1 dot. Throws ModelError
/// if a participant has no auxiliary.
double differential_phase_rate(const RegisterLayout& layout,
                               const ConfigurationBasis& basis,
                               std::span<const int> participants);

}  // namespace quditsim
