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

#include "quditsim/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "quditsim/errors.hpp"
#include "quditsim/io.hpp"

namespace quditsim {

ControlValues ControlValues::zeros(const RegisterLayout& layout) {
  ControlValues controls;
  controls.delta_mev.assign(layout.b_gates.size(), 0.0);
  controls.shift_mev.assign(layout.s_gates.size(), 0.0);
  return controls;
}

double& ControlValues::delta(const RegisterLayout& layout, int site_a,
                             int site_b) {
  const BGateHandle* handle = layout.find_b_gate(site_a, site_b);
  if (handle == nullptr) {
    throw ModelError("no B-gate between sites " + std::to_string(site_a) +
                     " and " + std::to_string(site_b));
  }
  return delta_mev[handle->id];
}

double& ControlValues::shift_at_site(const RegisterLayout& layout, int site) {
  if (site < 0 || site >= layout.num_sites()) {
    throw ModelError("no S-gate at site " + std::to_string(site));
  }
  return shift_mev[layout.s_gate_of(site)];
}

void validate_controls(const RegisterLayout& layout,
                       const ControlValues& controls,
                       const PhysicsParams& physics) {
  if (controls.delta_mev.size() != layout.b_gates.size() ||
      controls.shift_mev.size() != layout.s_gates.size()) {
    throw ModelError("control vector sizes do not match layout handles");
  }
  for (std::size_t i = 0; i < controls.delta_mev.size(); ++i) {
    const double delta = controls.delta_mev[i];
    if (!std::isfinite(delta)) {
      throw ModelError("non-finite tunneling amplitude on " +
                       layout.b_gates[i].name);
    }
    if (delta < 0.0 || delta > physics.delta_max_mev) {
      throw ModelError("tunneling amplitude " + format_double(delta) +
                       " meV on " + layout.b_gates[i].name +
                       " outside [0, " +
                       format_double(physics.delta_max_mev) + "]");
    }
  }
  for (std::size_t i = 0; i < controls.shift_mev.size(); ++i) {
    const double shift = controls.shift_mev[i];
    if (!std::isfinite(shift)) {
      throw ModelError("non-finite on-site shift on " +
                       layout.s_gates[i].name);
    }
    if (std::abs(shift) > physics.shift_max_mev) {
      throw ModelError("on-site shift " + format_double(shift) + " meV on " +
                       layout.s_gates[i].name + " exceeds cap " +
                       format_double(physics.shift_max_mev));
    }
  }
}

std::string HamiltonianModel::to_csv() const {
  std::ostringstream out;
  out << "row,col,re,im\n";
  for (int r = 0; r < matrix.rows(); ++r) {
    for (int c = 0; c < matrix.cols(); ++c) {
      const std::complex<double> v = matrix(r, c);
      if (v == std::complex<double>(0.0, 0.0)) continue;
      out << r << ',' << c << ',' << format_double(v.real()) << ','
          << format_double(v.imag()) << '\n';
    }
  }
  return out.str();
}

double diagonal_energy(const RegisterLayout& layout,
                       const ConfigurationBasis& basis,
                       const ControlValues& controls, int config_index) {
  const Configuration& config = basis.configs[config_index];
  double energy = basis.coulomb_mev[config_index];
  for (int site : config.site_of_qudit) {
    energy += controls.shift_mev[layout.s_gate_of(site)];
  }
  return energy;
}

HamiltonianModel build_hamiltonian(const RegisterLayout& layout,
                                   const ConfigurationBasis& basis,
                                   const ControlValues& controls) {
  if (controls.delta_mev.size() != layout.b_gates.size() ||
      controls.shift_mev.size() != layout.s_gates.size()) {
    throw ModelError("control vector sizes do not match layout handles");
  }
  const int n = basis.size();
  HamiltonianModel model;
  model.matrix = Eigen::MatrixXcd::Zero(n, n);
  model.diag_onsite_mev = Eigen::VectorXd::Zero(n);
  model.diag_coulomb_mev = Eigen::VectorXd::Zero(n);

  for (int i = 0; i < n; ++i) {
    const Configuration& config = basis.configs[i];
    double onsite = 0.0;
    for (int site : config.site_of_qudit) {
      onsite += controls.shift_mev[layout.s_gate_of(site)];
    }
    model.diag_onsite_mev(i) = onsite;
    model.diag_coulomb_mev(i) = basis.coulomb_mev[i];
    model.matrix(i, i) = onsite + basis.coulomb_mev[i];
  }

  // One-electron hops along B-gated pairs. A hop is legal when the target
  // site belongs to the same qudit's option set and is unoccupied.
  Configuration hopped;
  for (int i = 0; i < n; ++i) {
    const Configuration& config = basis.configs[i];
    for (int q = 0; q < basis.num_qudits; ++q) {
      const int from = config.site_of_qudit[q];
      for (const BGateHandle& handle : layout.b_gates) {
        const double delta = controls.delta_mev[handle.id];
        if (delta == 0.0) continue;
        int to = -1;
        if (handle.site_a == from) to = handle.site_b;
        if (handle.site_b == from) to = handle.site_a;
        if (to < 0) continue;
        hopped = config;
        hopped.site_of_qudit[q] = to;
        const int j = basis.index_of(hopped);
        if (j < 0 || j <= i) continue;  // absent (hard-core) or lower triangle
        model.matrix(i, j) = -delta;
        model.matrix(j, i) = -delta;
        model.hops.push_back({i, j, handle.id});
      }
    }
  }
  return model;
}

double differential_phase_rate(const RegisterLayout& layout,
                               const ConfigurationBasis& basis,
                               std::span<const int> participants,
                               const Configuration& on,
                               const Configuration& ref) {
  const int n = layout.num_qudits;
  if (static_cast<int>(on.site_of_qudit.size()) != n ||
      static_cast<int>(ref.site_of_qudit.size()) != n) {
    throw ModelError("configuration size does not match layout");
  }
  for (int q = 0; q < n; ++q) {
    const bool participating =
        std::find(participants.begin(), participants.end(), q) !=
        participants.end();
    if (!participating && on.site_of_qudit[q] != ref.site_of_qudit[q]) {
      throw ModelError(
          "on/ref configurations differ outside the participant set");
    }
  }
  for (int q : participants) {
    if (q < 0 || q >= n) throw ModelError("participant index out of range");
  }
  auto check_occupancy = [](const Configuration& config, const char* label) {
    for (std::size_t i = 0; i < config.site_of_qudit.size(); ++i) {
      for (std::size_t j = i + 1; j < config.site_of_qudit.size(); ++j) {
        if (config.site_of_qudit[i] == config.site_of_qudit[j]) {
          throw ModelError(std::string(label) +
                           " configuration places two electrons on one site");
        }
      }
    }
  };
  check_occupancy(on, "on");
  check_occupancy(ref, "ref");
  (void)basis;

  const double v_on = coulomb_energy(on, layout);
  const double v_ref = coulomb_energy(ref, layout);
  double sum_single = 0.0;
  for (int q : participants) {
    Configuration single = ref;
    single.site_of_qudit[q] = on.site_of_qudit[q];
    sum_single += coulomb_energy(single, layout);
  }
  const int k = static_cast<int>(participants.size());
  return v_on - sum_single + (k - 1) * v_ref;
}

double differential_phase_rate(const RegisterLayout& layout,
                               const ConfigurationBasis& basis,
                               std::span<const int> participants) {
  Configuration ref;
  ref.site_of_qudit.resize(layout.num_qudits);
  for (int q = 0; q < layout.num_qudits; ++q) {
    ref.site_of_qudit[q] = layout.dot_site(q, 1);
  }
  Configuration on = ref;
  for (int q : participants) {
    const int aux = layout.primary_aux(q);
    if (aux < 0) {
      throw ModelError("participant " + std::to_string(q) +
                       " has no auxiliary");
    }
    on.site_of_qudit[q] = aux;
  }
  return differential_phase_rate(layout, basis, participants, on, ref);
}

}  // namespace quditsim
