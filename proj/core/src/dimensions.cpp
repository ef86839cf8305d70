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

#include "quditsim/dimensions.hpp"

#include <cmath>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "quditsim/errors.hpp"
#include "quditsim/io.hpp"

namespace quditsim {

namespace {

void check_preconditions(int total_sites, int levels) {
  if (total_sites < 1) throw ConfigError("donor site count K must be >= 1");
  if (levels < 2) throw ConfigError("qudit size D must be >= 2");
}

}  // namespace

double sites_per_qudit(int levels, Scheme scheme) {
  switch (scheme) {
    case Scheme::kAlwaysOn:
      return static_cast<double>(levels);
    case Scheme::kAuxPerQudit:
      return static_cast<double>(levels) + 1.0;
    case Scheme::kSharedAux:
      return static_cast<double>(levels) + 0.5;
  }
  return static_cast<double>(levels);
}

double hilbert_log_dim(int total_sites, int levels, Scheme scheme) {
  check_preconditions(total_sites, levels);
  return static_cast<double>(total_sites) *
         std::log10(static_cast<double>(levels)) /
         sites_per_qudit(levels, scheme);
}

int max_whole_qudits(int total_sites, int levels, Scheme scheme) {
  check_preconditions(total_sites, levels);
  switch (scheme) {
    case Scheme::kAlwaysOn:
      return total_sites / levels;
    case Scheme::kAuxPerQudit:
      return total_sites / (levels + 1);
    case Scheme::kSharedAux: {
      // Largest m with m*D + ceil(m/2) <= K.
      int m = 0;
      while ((m + 1) * levels + (m + 2) / 2 <= total_sites) ++m;
      return m;
    }
  }
  return 0;
}

std::string hilbert_dim_integer(int total_sites, int levels, Scheme scheme) {
  const int qudits = max_whole_qudits(total_sites, levels, scheme);
  boost::multiprecision::cpp_int dim = 1;
  for (int i = 0; i < qudits; ++i) dim *= levels;
  return dim.str();
}

int optimal_qudit_size(int total_sites, Scheme scheme, int d_min, int d_max) {
  if (d_min < 2 || d_max < d_min) {
    throw ConfigError("qudit size range must be nonempty with D >= 2");
  }
  int best_d = d_min;
  double best = hilbert_log_dim(total_sites, d_min, scheme);
  for (int d = d_min + 1; d <= d_max; ++d) {
    const double value = hilbert_log_dim(total_sites, d, scheme);
    if (value > best) {
      best = value;
      best_d = d;
    }
  }
  return best_d;
}

std::string DimensionReport::to_csv() const {
  std::ostringstream out;
  out << "scheme,D,K,log10_dim\n";
  for (const DimensionRow& row : rows) {
    out << scheme_name(row.scheme) << ',' << row.levels << ','
        << row.total_sites << ',' << format_double(row.log10_dim) << '\n';
  }
  return out.str();
}

std::string DimensionReport::summary() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    if (i > 0) out << ' ';
    out << scheme_name(schemes[i]) << ':' << argmax_levels[i];
  }
  return out.str();
}

DimensionReport dimension_scan(int total_sites, int d_min, int d_max) {
  if (d_min < 2 || d_max < d_min) {
    throw ConfigError("qudit size range must be nonempty with D >= 2");
  }
  check_preconditions(total_sites, d_min);
  DimensionReport report;
  report.total_sites = total_sites;
  report.d_min = d_min;
  report.d_max = d_max;
  report.schemes = {Scheme::kAlwaysOn, Scheme::kSharedAux,
                    Scheme::kAuxPerQudit};
  for (Scheme scheme : report.schemes) {
    for (int d = d_min; d <= d_max; ++d) {
      report.rows.push_back(
          {scheme, d, total_sites, hilbert_log_dim(total_sites, d, scheme)});
    }
    report.argmax_levels.push_back(
        optimal_qudit_size(total_sites, scheme, d_min, d_max));
  }
  return report;
}

}  // namespace quditsim
