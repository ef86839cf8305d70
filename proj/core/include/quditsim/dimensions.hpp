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

#include "quditsim/layout.hpp"

namespace quditsim {

/// Donor sites consumed per qudit, including its auxiliary overhead
/// (D, D + 1, or D + 0.5 sites for the three architectures).
double sites_per_qudit(int levels, Scheme scheme);

/// log10 of the register dimension for K donor sites partitioned into
/// D-level qudits: (K / sites_per_qudit) * log10(D). Continuous formula;
/// matches the published curves.
double hilbert_log_dim(int total_sites, int levels, Scheme scheme);

/// Exact integer register dimension using whole qudits only: D^m with m the
/// largest qudit count whose sites fit into K. Returned as a decimal string
/// (values overflow any machine integer).
std::string hilbert_dim_integer(int total_sites, int levels, Scheme scheme);

/// Whole qudits that fit into `total_sites` donor sites.
int max_whole_qudits(int total_sites, int levels, Scheme scheme);

/// argmax of hilbert_log_dim over an inclusive D range; ties break toward
/// smaller D (simpler single-qudit gates).
int optimal_qudit_size(int total_sites, Scheme scheme, int d_min, int d_max);

struct DimensionRow {
  Scheme scheme;
  int levels = 0;
  int total_sites = 0;
  double log10_dim = 0.0;
};

struct DimensionReport {
  int total_sites = 0;
  int d_min = 0;
  int d_max = 0;
  std::vector<DimensionRow> rows;   // scheme-major, then ascending D
  std::vector<int> argmax_levels;   // per scheme, same order as `schemes`
  std::vector<Scheme> schemes;

  /// CSV with header scheme,D,K,log10_dim.
  std::string to_csv() const;

  /// One-line argmax summary, e.g. "always_on:3 shared_aux:3 aux_per_qudit:4".
  std::string summary() const;
};

/// Evaluates all schemes over an inclusive D range at fixed K.
DimensionReport dimension_scan(int total_sites, int d_min, int d_max);

}  // namespace quditsim
