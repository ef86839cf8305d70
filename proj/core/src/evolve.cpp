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

#include "quditsim/evolve.hpp"

#include <cmath>
#include <numbers>

#include "quditsim/constants.hpp"
#include "quditsim/errors.hpp"

namespace quditsim {

double wrap_angle(double radians) {
  const double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(radians, two_pi);
  if (wrapped <= -std::numbers::pi) wrapped += two_pi;
  if (wrapped > std::numbers::pi) wrapped -= two_pi;
  return wrapped;
}

Propagator propagate(const RegisterLayout& layout,
                     const ConfigurationBasis& basis,
                     const ControlSchedule& schedule,
                     const EvolveOptions& options) {
  const int n = basis.size();
  Propagator u = Propagator::Identity(n, n);
  for (const ScheduleSegment& segment : schedule.segments) {
    if (!(segment.duration_ps > 0.0) || !std::isfinite(segment.duration_ps)) {
      throw ModelError("schedule segment duration must be positive and finite");
    }
    for (double delta : segment.controls.delta_mev) {
      if (!std::isfinite(delta) || delta < 0.0) {
        throw ModelError("non-finite or negative tunneling amplitude");
      }
    }
    for (double shift : segment.controls.shift_mev) {
      if (!std::isfinite(shift)) {
        throw ModelError("non-finite on-site shift");
      }
    }
    const HamiltonianModel model =
        build_hamiltonian(layout, basis, segment.controls);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        options.hamiltonian_sign * model.matrix);
    if (solver.info() != Eigen::Success) {
      throw ModelError("eigendecomposition failed for a schedule segment");
    }
    const Eigen::VectorXd& energies = solver.eigenvalues();
    Eigen::VectorXcd phases(n);
    for (int i = 0; i < n; ++i) {
      const double angle = -energies(i) * segment.duration_ps / kHbarMeVPs;
      phases(i) = std::complex<double>(std::cos(angle), std::sin(angle));
    }
    u = solver.eigenvectors() * phases.asDiagonal() *
        solver.eigenvectors().adjoint() * u;
  }
  return u;
}

StateVector evolve_state(const StateVector& psi, const Propagator& u) {
  if (psi.size() != u.cols()) {
    throw ModelError("state dimension does not match propagator");
  }
  StateVector result = u * psi;
  const double norm_drift = std::abs(result.norm() - psi.norm());
  if (norm_drift > 1e-9) {
    throw ModelError("norm drift " + std::to_string(norm_drift) +
                     " exceeds 1e-9; propagator is not unitary");
  }
  return result;
}

std::vector<int> projector_subspace(const Eigen::MatrixXcd& projector) {
  if (projector.rows() != projector.cols()) {
    throw ModelError("projector must be square");
  }
  const double hermiticity =
      (projector - projector.adjoint()).cwiseAbs().maxCoeff();
  const double idempotency =
      (projector * projector - projector).cwiseAbs().maxCoeff();
  if (hermiticity > 1e-12 || idempotency > 1e-12) {
    throw ModelError("projector is not Hermitian idempotent");
  }
  std::vector<int> subspace;
  for (int i = 0; i < projector.rows(); ++i) {
    const double p = projector(i, i).real();
    if (std::abs(p - 1.0) < 1e-12) {
      subspace.push_back(i);
    } else if (std::abs(p) > 1e-12) {
      throw ModelError("projector is not diagonal in the configuration basis");
    }
  }
  return subspace;
}

FidelityReport gate_fidelity(const Propagator& u,
                             const Eigen::MatrixXcd& target,
                             const std::vector<int>& subspace) {
  const int d = static_cast<int>(subspace.size());
  if (target.rows() != d || target.cols() != d) {
    throw ModelError("target dimension does not match subspace");
  }
  Eigen::MatrixXcd m(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      m(r, c) = u(subspace[r], subspace[c]);
    }
  }
  const std::complex<double> overlap = (target.adjoint() * m).trace();
  const double dd = static_cast<double>(d);
  FidelityReport report;
  report.global_phase_rad = std::arg(overlap);
  report.process_fidelity = std::norm(overlap) / (dd * dd);
  const double trace_mm = (m.adjoint() * m).trace().real();
  report.average_fidelity =
      (dd * report.process_fidelity + trace_mm / dd) / (dd + 1.0);
  report.leakage = 1.0 - trace_mm / dd;
  return report;
}

double leakage_profile(const StateVector& psi,
                       const std::vector<int>& subspace) {
  double inside = 0.0;
  for (int index : subspace) {
    if (index < 0 || index >= psi.size()) {
      throw ModelError("subspace index out of range");
    }
    inside += std::norm(psi(index));
  }
  const double norm2 = psi.squaredNorm();
  if (norm2 <= 0.0) throw ModelError("zero state");
  double leakage = 1.0 - inside / norm2;
  if (leakage < 0.0 && leakage > -1e-12) leakage = 0.0;
  return leakage;
}

Eigen::VectorXd diagonal_phase_oracle(const RegisterLayout& layout,
                                      const ConfigurationBasis& basis,
                                      const ControlValues& controls,
                                      double duration_ps) {
  Eigen::VectorXd phases(basis.size());
  for (int i = 0; i < basis.size(); ++i) {
    const double energy = diagonal_energy(layout, basis, controls, i);
    phases(i) = wrap_angle(-energy * duration_ps / kHbarMeVPs);
  }
  return phases;
}

}  // namespace quditsim
