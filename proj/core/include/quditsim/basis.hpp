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

#include <map>
#include <span>
#include <vector>

#include "quditsim/layout.hpp"

namespace quditsim {

/// A multi-electron charge configuration: the occupied site of each qudit's
/// electron (one of its D dots or an auxiliary serving it).
struct Configuration {
  std::vector<int> site_of_qudit;

  bool operator==(const Configuration& other) const = default;
  auto operator<=>(const Configuration& other) const = default;
};

/// Every configuration satisfying the single-occupancy (hard-core) constraint,
/// in deterministic lexicographic order of per-qudit site indices.
struct ConfigurationBasis {
  std::vector<Configuration> configs;
  std::vector<double> coulomb_mev;  // static Coulomb energy per configuration

  /// Basis indices of computational configurations (every electron on a qudit
  /// dot), ordered by computational multi-index with qudit 0 most significant.
  std::vector<int> computational;

  int num_qudits = 0;
  int levels = 0;

  int size() const { return static_cast<int>(configs.size()); }

  /// Index of a configuration, -1 if absent.
  int index_of(const Configuration& config) const;

  /// Basis index of the computational state with the given per-qudit levels
  /// (1-based, qudit order).
  int computational_index(std::span<const int> level_of_qudit) const;

  /// Dimension of the computational subspace, D^N.
  int computational_dimension() const {
    return static_cast<int>(computational.size());
  }

 private:
  friend ConfigurationBasis enumerate_basis(const RegisterLayout&, int);
  std::map<Configuration, int> index_;
};

/// Enumerates the constraint-satisfying basis for a layout. Throws ModelError
/// if the basis would exceed `basis_cap` states.
ConfigurationBasis enumerate_basis(const RegisterLayout& layout,
                                   int basis_cap = 65536);

/// Static Coulomb energy of a configuration in meV: sum over unordered
/// electron pairs of s_ij * k_C / (eps_r * r_ij).
double coulomb_energy(const Configuration& config,
                      const RegisterLayout& layout);

}  // namespace quditsim
