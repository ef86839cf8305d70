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

#include "quditsim/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "quditsim/errors.hpp"

namespace quditsim {

std::string scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::kAlwaysOn:
      return "always_on";
    case Scheme::kAuxPerQudit:
      return "aux_per_qudit";
    case Scheme::kSharedAux:
      return "shared_aux";
  }
  return "unknown";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "always_on") return Scheme::kAlwaysOn;
  if (name == "aux_per_qudit") return Scheme::kAuxPerQudit;
  if (name == "shared_aux") return Scheme::kSharedAux;
  throw ConfigError("unknown scheme '" + name +
                    "' (expected always_on, aux_per_qudit or shared_aux)");
}

int RegisterLayout::dot_site(int qudit, int level) const {
  return qudit * levels + (level - 1);
}

std::vector<int> RegisterLayout::aux_sites_of(int qudit) const {
  std::vector<int> result;
  for (const DotSite& site : sites) {
    if (site.kind != SiteKind::kAuxiliary) continue;
    if (std::find(site.owners.begin(), site.owners.end(), qudit) !=
        site.owners.end()) {
      result.push_back(site.id);
    }
  }
  return result;
}

int RegisterLayout::primary_aux(int qudit) const {
  const std::vector<int> candidates = aux_sites_of(qudit);
  if (candidates.empty()) return -1;
  const Eigen::Vector3d base = sites[dot_site(qudit, 1)].position_nm;
  int best = candidates.front();
  double best_dist = std::numeric_limits<double>::infinity();
  for (int aux : candidates) {
    const double dist = (sites[aux].position_nm - base).norm();
    if (dist < best_dist - 1e-12) {
      best_dist = dist;
      best = aux;
    }
  }
  return best;
}

const BGateHandle* RegisterLayout::find_b_gate(int site_a, int site_b) const {
  for (const BGateHandle& handle : b_gates) {
    if ((handle.site_a == site_a && handle.site_b == site_b) ||
        (handle.site_a == site_b && handle.site_b == site_a)) {
      return &handle;
    }
  }
  return nullptr;
}

const BGateHandle* RegisterLayout::find_b_gate(const std::string& name) const {
  for (const BGateHandle& handle : b_gates) {
    if (handle.name == name) return &handle;
  }
  return nullptr;
}

const SGateHandle* RegisterLayout::find_s_gate(const std::string& name) const {
  for (const SGateHandle& handle : s_gates) {
    if (handle.name == name) return &handle;
  }
  return nullptr;
}

int RegisterLayout::s_gate_of(int site) const { return site; }

double RegisterLayout::distance_nm(int site_a, int site_b) const {
  return (sites[site_a].position_nm - sites[site_b].position_nm).norm();
}

double RegisterLayout::pair_epsilon(int site_a, int site_b) const {
  if (sites[site_a].kind == SiteKind::kAuxiliary &&
      sites[site_b].kind == SiteKind::kAuxiliary) {
    return epsilon_r_aux;
  }
  return epsilon_r;
}

namespace {

bool aux_serves_qudit(const DotSite& aux, int qudit) {
  return std::find(aux.owners.begin(), aux.owners.end(), qudit) !=
         aux.owners.end();
}

// Full strength for pairs the trenches cannot reach: the auxiliary row, pairs
// within one qudit, and each auxiliary paired with dots of the qudits it
// serves. Everything else crosses a trench.
bool trench_keeps_full(const RegisterLayout& layout, int a, int b) {
  const DotSite& sa = layout.sites[a];
  const DotSite& sb = layout.sites[b];
  if (sa.kind == SiteKind::kAuxiliary && sb.kind == SiteKind::kAuxiliary) {
    return true;
  }
  if (sa.kind == SiteKind::kQuditDot && sb.kind == SiteKind::kQuditDot) {
    return sa.qudit == sb.qudit;
  }
  const DotSite& aux = (sa.kind == SiteKind::kAuxiliary) ? sa : sb;
  const DotSite& dot = (sa.kind == SiteKind::kAuxiliary) ? sb : sa;
  return aux_serves_qudit(aux, dot.qudit);
}

}  // namespace

void apply_screening(RegisterLayout& layout, const ScreeningSpec& screening) {
  const int n = layout.num_sites();
  ScreeningSpec::Mode mode = screening.mode;
  if (mode == ScreeningSpec::Mode::kSchemeDefault) {
    // The always-on architecture relies on the bare interaction; the switched
    // architectures are modeled with ideal trenches by default.
    mode = (layout.scheme == Scheme::kAlwaysOn) ? ScreeningSpec::Mode::kUniform
                                                : ScreeningSpec::Mode::kTrench;
  }
  layout.screening = Eigen::MatrixXd::Ones(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      double value = 1.0;
      if (mode == ScreeningSpec::Mode::kUniform) {
        value = screening.uniform_value;
      } else {
        value = trench_keeps_full(layout, a, b) ? 1.0
                                                : screening.trench_residual;
      }
      layout.screening(a, b) = value;
      layout.screening(b, a) = value;
    }
  }
  for (const ScreeningSpec::PairOverride& pair : screening.overrides) {
    if (pair.site_a < 0 || pair.site_a >= n || pair.site_b < 0 ||
        pair.site_b >= n || pair.site_a == pair.site_b) {
      throw ConfigError("screening override references invalid site pair");
    }
    if (pair.value < 0.0 || pair.value > 1.0) {
      throw ConfigError("screening factor must lie in [0, 1]");
    }
    layout.screening(pair.site_a, pair.site_b) = pair.value;
    layout.screening(pair.site_b, pair.site_a) = pair.value;
  }
}

RegisterLayout build_register(Scheme scheme, int num_qudits, int levels,
                              const GeometryParams& geometry, double epsilon_r,
                              const ScreeningSpec& screening) {
  if (num_qudits < 1) throw ConfigError("qudit count must be >= 1");
  if (levels < 2) throw ConfigError("levels per qudit must be >= 2");
  if (geometry.dot_spacing_nm <= 0.0 || geometry.column_pitch_nm <= 0.0 ||
      geometry.qudit_aux_gap_nm <= 0.0 || geometry.stagger_nm <= 0.0) {
    throw ConfigError("geometry spacings must be positive");
  }
  if (epsilon_r <= 0.0) throw ConfigError("epsilon_r must be positive");
  if (scheme == Scheme::kSharedAux && num_qudits < 2) {
    throw ConfigError("shared_aux requires at least 2 qudits");
  }

  RegisterLayout layout;
  layout.scheme = scheme;
  layout.num_qudits = num_qudits;
  layout.levels = levels;
  layout.geometry = geometry;
  layout.epsilon_r = epsilon_r;
  layout.epsilon_r_aux = epsilon_r;

  // Qudit chains. Even columns extend upward, odd columns downward.
  for (int q = 0; q < num_qudits; ++q) {
    const double x = q * geometry.column_pitch_nm;
    const double direction = (q % 2 == 0) ? 1.0 : -1.0;
    const double base =
        (q % 2 == 0) ? geometry.qudit_aux_gap_nm : geometry.stagger_nm;
    for (int d = 1; d <= levels; ++d) {
      DotSite site;
      site.id = static_cast<int>(layout.sites.size());
      site.name = "q" + std::to_string(q) + ".d" + std::to_string(d);
      site.position_nm = Eigen::Vector3d(
          x, direction * (base + (d - 1) * geometry.dot_spacing_nm), 0.0);
      site.kind = SiteKind::kQuditDot;
      site.qudit = q;
      site.level = d;
      layout.sites.push_back(site);
    }
  }

  // Auxiliary row at y = 0.
  if (scheme == Scheme::kAuxPerQudit) {
    for (int q = 0; q < num_qudits; ++q) {
      DotSite site;
      site.id = static_cast<int>(layout.sites.size());
      site.name = "aux" + std::to_string(q);
      site.position_nm =
          Eigen::Vector3d(q * geometry.column_pitch_nm, 0.0, 0.0);
      site.kind = SiteKind::kAuxiliary;
      site.owners = {q};
      layout.sites.push_back(site);
    }
  } else if (scheme == Scheme::kSharedAux) {
    const int num_aux = (num_qudits + 1) / 2;
    for (int j = 0; j < num_aux; ++j) {
      DotSite site;
      site.id = static_cast<int>(layout.sites.size());
      site.name = "aux" + std::to_string(j);
      const double x = (2.0 * j + 1.5) * geometry.column_pitch_nm;
      site.position_nm = Eigen::Vector3d(x, 0.0, 0.0);
      site.kind = SiteKind::kAuxiliary;
      // Served by the up-to-four qudit columns within 1.5 pitches; at the
      // register edges this degrades to fewer owners.
      for (int q = 0; q < num_qudits; ++q) {
        const double dist = std::abs(q * geometry.column_pitch_nm - x);
        if (dist <= 1.5 * geometry.column_pitch_nm + 1e-9) {
          site.owners.push_back(q);
        }
      }
      if (static_cast<int>(site.owners.size()) > 4) {
        site.owners.resize(4);
      }
      layout.sites.push_back(site);
    }
  }

  // Every intra-chain adjacent pair gets a barrier gate, then every level-1
  // dot to each auxiliary serving its qudit.
  for (int q = 0; q < num_qudits; ++q) {
    for (int d = 1; d < levels; ++d) {
      BGateHandle handle;
      handle.id = static_cast<int>(layout.b_gates.size());
      handle.site_a = layout.dot_site(q, d);
      handle.site_b = layout.dot_site(q, d + 1);
      handle.name = "B:" + layout.sites[handle.site_a].name + "~" +
                    layout.sites[handle.site_b].name;
      layout.b_gates.push_back(handle);
    }
  }
  for (int q = 0; q < num_qudits; ++q) {
    for (int aux : layout.aux_sites_of(q)) {
      BGateHandle handle;
      handle.id = static_cast<int>(layout.b_gates.size());
      handle.site_a = layout.dot_site(q, 1);
      handle.site_b = aux;
      handle.name = "B:" + layout.sites[handle.site_a].name + "~" +
                    layout.sites[aux].name;
      layout.b_gates.push_back(handle);
    }
  }

  for (const DotSite& site : layout.sites) {
    SGateHandle handle;
    handle.id = static_cast<int>(layout.s_gates.size());
    handle.site = site.id;
    handle.name = "S:" + site.name;
    layout.s_gates.push_back(handle);
  }

  for (std::size_t a = 0; a < layout.sites.size(); ++a) {
    for (std::size_t b = a + 1; b < layout.sites.size(); ++b) {
      if ((layout.sites[a].position_nm - layout.sites[b].position_nm).norm() <
          1e-9) {
        throw ConfigError("degenerate geometry: sites " +
                          layout.sites[a].name + " and " +
                          layout.sites[b].name + " coincide");
      }
    }
  }

  apply_screening(layout, screening);
  return layout;
}

}  // namespace quditsim
