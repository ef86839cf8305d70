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

#include "quditsim/basis.hpp"

#include <algorithm>

#include "quditsim/errors.hpp"

namespace quditsim {

int ConfigurationBasis::index_of(const Configuration& config) const {
  auto it = index_.find(config);
  return it == index_.end() ? -1 : it->second;
}

int ConfigurationBasis::computational_index(
    std::span<const int> level_of_qudit) const {
  int flat = 0;
  for (int level : level_of_qudit) {
    flat = flat * levels + (level - 1);
  }
  return computational[flat];
}

double coulomb_energy(const Configuration& config,
                      const RegisterLayout& layout) {
  double energy = 0.0;
  const int n = static_cast<int>(config.site_of_qudit.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int a = config.site_of_qudit[i];
      const int b = config.site_of_qudit[j];
      const double s = layout.screening(a, b);
      if (s == 0.0) continue;
      energy += s * kCoulombMeVNm /
                (layout.pair_epsilon(a, b) * layout.distance_nm(a, b));
    }
  }
  return energy;
}

ConfigurationBasis enumerate_basis(const RegisterLayout& layout,
                                   int basis_cap) {
  ConfigurationBasis basis;
  basis.num_qudits = layout.num_qudits;
  basis.levels = layout.levels;

  // Per-qudit candidate sites: the D dots then any auxiliaries serving the
  // qudit, ascending site ids. Dots precede auxiliaries globally, so odometer
  // order below is lexicographic in the per-qudit site index.
  std::vector<std::vector<int>> options(layout.num_qudits);
  for (int q = 0; q < layout.num_qudits; ++q) {
    for (int d = 1; d <= layout.levels; ++d) {
      options[q].push_back(layout.dot_site(q, d));
    }
    for (int aux : layout.aux_sites_of(q)) {
      options[q].push_back(aux);
    }
    std::sort(options[q].begin(), options[q].end());
  }

  std::vector<int> cursor(layout.num_qudits, 0);
  Configuration config;
  config.site_of_qudit.resize(layout.num_qudits);
  bool done = layout.num_qudits == 0;
  while (!done) {
    for (int q = 0; q < layout.num_qudits; ++q) {
      config.site_of_qudit[q] = options[q][cursor[q]];
    }
    // Hard-core constraint: a shared auxiliary holds at most one electron.
    bool valid = true;
    for (int i = 0; i < layout.num_qudits && valid; ++i) {
      for (int j = i + 1; j < layout.num_qudits; ++j) {
        if (config.site_of_qudit[i] == config.site_of_qudit[j]) {
          valid = false;
          break;
        }
      }
    }
    if (valid) {
      if (basis.size() >= basis_cap) {
        throw ModelError("configuration basis exceeds cap of " +
                         std::to_string(basis_cap) + " states");
      }
      basis.index_.emplace(config, basis.size());
      basis.configs.push_back(config);
    }
    // Odometer increment, qudit 0 most significant.
    int q = layout.num_qudits - 1;
    while (q >= 0) {
      if (++cursor[q] < static_cast<int>(options[q].size())) break;
      cursor[q] = 0;
      --q;
    }
    done = q < 0;
  }

  basis.coulomb_mev.reserve(basis.configs.size());
  for (const Configuration& c : basis.configs) {
    basis.coulomb_mev.push_back(coulomb_energy(c, layout));
  }

  // Computational states in multi-index order.
  std::vector<int> level_of_qudit(layout.num_qudits, 1);
  const long long comp_count = [&] {
    long long n = 1;
    for (int q = 0; q < layout.num_qudits; ++q) n *= layout.levels;
    return n;
  }();
  for (long long flat = 0; flat < comp_count; ++flat) {
    long long rest = flat;
    for (int q = layout.num_qudits - 1; q >= 0; --q) {
      level_of_qudit[q] = static_cast<int>(rest % layout.levels) + 1;
      rest /= layout.levels;
    }
    Configuration comp;
    comp.site_of_qudit.resize(layout.num_qudits);
    for (int q = 0; q < layout.num_qudits; ++q) {
      comp.site_of_qudit[q] = layout.dot_site(q, level_of_qudit[q]);
    }
    const int index = basis.index_of(comp);
    if (index < 0) {
      throw ModelError("computational configuration missing from basis");
    }
    basis.computational.push_back(index);
  }

  return basis;
}

}  // namespace quditsim
