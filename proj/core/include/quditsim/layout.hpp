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

#include <Eigen/Dense>

#include "quditsim/constants.hpp"

namespace quditsim {

/// Register architecture.
///
/// kAlwaysOn     - bare qudit chains, permanent Coulomb coupling between the
///                 innermost (level-1) dots of adjacent qudits.
/// kAuxPerQudit  - one auxiliary dot per qudit on a center row; electrons are
///                 shuttled onto the auxiliaries to switch the interaction on.
/// kSharedAux    - horizontally offset auxiliaries, each shared by up to four
///                 neighboring qudits; half as many auxiliary sites.
enum class Scheme { kAlwaysOn, kAuxPerQudit, kSharedAux };

std::string scheme_name(Scheme scheme);
Scheme scheme_from_name(const std::string& name);

enum class SiteKind { kQuditDot, kAuxiliary };

/// Register geometry, all lengths in nm.
///
/// Qudit chains run vertically at pitch column_pitch_nm, alternating above and
/// below the auxiliary row (y = 0). Chains pointing up start at
/// y = +qudit_aux_gap_nm, chains pointing down at y = -stagger_nm; the
/// asymmetry separates diagonally facing dots. Dots within a chain are
/// dot_spacing_nm apart, level 1 innermost.
struct GeometryParams {
  double dot_spacing_nm = 20.0;
  double column_pitch_nm = 20.0;
  double qudit_aux_gap_nm = 20.0;
  double stagger_nm = 30.0;
};

/// Pairwise screening model for the Coulomb terms.
///
/// kTrench models conducting trenches between adjacent qudit columns: any pair
/// of sites separated by a trench is attenuated to trench_residual. Pairs kept
/// at full strength: both sites auxiliary (the center row is not trenched),
/// sites of the same qudit, and auxiliary-to-dot pairs where the aux serves
/// that qudit. kUniform applies uniform_value to every pair.
struct ScreeningSpec {
  enum class Mode { kSchemeDefault, kUniform, kTrench };
  Mode mode = Mode::kSchemeDefault;
  double uniform_value = 1.0;
  double trench_residual = 0.0;
  struct PairOverride {
    int site_a = 0;
    int site_b = 0;
    double value = 1.0;
  };
  std::vector<PairOverride> overrides;
};

struct DotSite {
  int id = 0;
  std::string name;
  Eigen::Vector3d position_nm = Eigen::Vector3d::Zero();
  SiteKind kind = SiteKind::kQuditDot;
  int qudit = -1;           // owning qudit for dots, -1 for auxiliaries
  int level = 0;            // 1..D for dots, 0 for auxiliaries
  std::vector<int> owners;  // qudits served by an auxiliary (1 or up to 4)
};

/// Barrier electrode between two sites; carries the tunneling amplitude.
struct BGateHandle {
  int id = 0;
  std::string name;
  int site_a = 0;
  int site_b = 0;
};

/// Shift electrode above one site; carries the on-site energy shift.
struct SGateHandle {
  int id = 0;
  std::string name;
  int site = 0;
};

struct RegisterLayout {
  Scheme scheme = Scheme::kAlwaysOn;
  int num_qudits = 0;
  int levels = 0;
  GeometryParams geometry;
  double epsilon_r = kSiliconEpsilonR;      // bulk region
  double epsilon_r_aux = kSiliconEpsilonR;  // region around the auxiliary row
  std::vector<DotSite> sites;
  std::vector<BGateHandle> b_gates;
  std::vector<SGateHandle> s_gates;
  Eigen::MatrixXd screening;  // symmetric, diagonal unused

  int num_sites() const { return static_cast<int>(sites.size()); }

  /// Site id of dot `level` (1-based) of qudit `qudit`.
  int dot_site(int qudit, int level) const;

  /// Auxiliary site ids serving `qudit`, ascending.
  std::vector<int> aux_sites_of(int qudit) const;

  /// Nearest auxiliary serving `qudit` (ties toward lower id), -1 if none.
  int primary_aux(int qudit) const;

  /// B-gate between two sites in either order, nullptr if absent.
  const BGateHandle* find_b_gate(int site_a, int site_b) const;

  const BGateHandle* find_b_gate(const std::string& name) const;
  const SGateHandle* find_s_gate(const std::string& name) const;

  /// S-gate handle id for a site (every site has one).
  int s_gate_of(int site) const;

  double distance_nm(int site_a, int site_b) const;

  /// Relative permittivity applied to a pair (aux region if both sites are
  /// auxiliaries, bulk otherwise).
  double pair_epsilon(int site_a, int site_b) const;
};

/// Builds a register for one of the three architectures.
///
/// Throws ConfigError for invalid scheme/parameter combinations (N < 1, D < 2,
/// non-positive spacings, shared_aux with N < 2).
RegisterLayout build_register(Scheme scheme, int num_qudits, int levels,
                              const GeometryParams& geometry = {},
                              double epsilon_r = kSiliconEpsilonR,
                              const ScreeningSpec& screening = {});

/// Recomputes the screening matrix of an existing layout.
void apply_screening(RegisterLayout& layout, const ScreeningSpec& screening);

}  // namespace quditsim
