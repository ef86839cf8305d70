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

// Test-only oracles, kept independent of the implementation paths they check:
// Coulomb sums are recomputed from raw positions, Rabi formulas are closed
// form, and random unitaries come from QR of Gaussian matrices.

#pragma once

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "quditsim/basis.hpp"
#include "quditsim/constants.hpp"
#include "quditsim/evolve.hpp"
#include "quditsim/layout.hpp"
#include "quditsim/schedule.hpp"

namespace quditsim::testing {

/// Coulomb energy recomputed from first principles: explicit pair loop over
/// positions, screening and per-pair permittivity.
inline double brute_force_coulomb(const Configuration& config,
                                  const RegisterLayout& layout) {
  double energy = 0.0;
  const int n = static_cast<int>(config.site_of_qudit.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int a = config.site_of_qudit[i];
      const int b = config.site_of_qudit[j];
      const Eigen::Vector3d r =
          layout.sites[a].position_nm - layout.sites[b].position_nm;
      double eps = layout.epsilon_r;
      if (layout.sites[a].kind == SiteKind::kAuxiliary &&
          layout.sites[b].kind == SiteKind::kAuxiliary) {
        eps = layout.epsilon_r_aux;
      }
      energy += layout.screening(a, b) * kCoulombMeVNm / (eps * r.norm());
    }
  }
  return energy;
}

/// Two-level resonant Rabi transfer probability after time t at amplitude
/// delta: P = sin^2(delta t / hbar).
inline double rabi_transfer_probability(double delta_mev, double t_ps) {
  const double angle = delta_mev * t_ps / kHbarMeVPs;
  return std::sin(angle) * std::sin(angle);
}

/// Haar-distributed random unitary via QR of a complex Gaussian matrix.
inline Eigen::MatrixXcd random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd z(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      z(r, c) = std::complex<double>(gauss(rng), gauss(rng));
    }
  }
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < dim; ++c) {
    const std::complex<double> d = r(c, c);
    q.col(c) *= d / std::abs(d);
  }
  return q;
}

/// Randomized control values within the caps.
inline ControlValues random_controls(const RegisterLayout& layout,
                                     std::mt19937_64& rng,
                                     double delta_max = 1.0,
                                     double shift_max = 5.0) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  ControlValues controls = ControlValues::zeros(layout);
  for (double& delta : controls.delta_mev) delta = delta_max * u01(rng);
  for (double& shift : controls.shift_mev) {
    shift = shift_max * (2.0 * u01(rng) - 1.0);
  }
  return controls;
}

/// Randomized schedule with up to `max_segments` segments.
inline ControlSchedule random_schedule(const RegisterLayout& layout,
                                       std::mt19937_64& rng,
                                       int max_segments = 8) {
  std::uniform_int_distribution<int> count(1, max_segments);
  std::uniform_real_distribution<double> duration(0.05, 4.0);
  ControlSchedule schedule;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    ScheduleSegment segment;
    segment.duration_ps = duration(rng);
    segment.controls = random_controls(layout, rng);
    schedule.segments.push_back(std::move(segment));
  }
  return schedule;
}

inline StateVector random_state(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  StateVector psi(dim);
  for (int i = 0; i < dim; ++i) {
    psi(i) = std::complex<double>(gauss(rng), gauss(rng));
  }
  psi.normalize();
  return psi;
}

}  // namespace quditsim::testing
