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

#include <doctest.h>

#include <numbers>
#include <random>

#include "quditsim/errors.hpp"
#include "quditsim/evolve.hpp"
#include "support/test_support.hpp"

using namespace quditsim;
using std::numbers::pi;

namespace {

ControlSchedule single_segment(const RegisterLayout&, double duration,
                               const ControlValues& controls) {
  ControlSchedule schedule;
  schedule.segments.push_back({duration, controls, ""});
  return schedule;
}

}  // namespace

TEST_CASE("vanishing duration gives the identity") {
  const RegisterLayout layout = build_register(Scheme::kAuxPerQudit, 1, 3);
  const ConfigurationBasis basis = enumerate_basis(layout);
  const Propagator u = propagate(
      layout, basis, single_segment(layout, 1e-12,
                                    ControlValues::zeros(layout)));
  const double defect =
      (u - Propagator::Identity(basis.size(), basis.size()))
          .cwiseAbs()
          .maxCoeff();
  CHECK(defect < 1e-10);
}

TEST_CASE("resonant two-level transfer") {
  const RegisterLayout layout = build_register(Scheme::kAlwaysOn, 1, 3);
  const ConfigurationBasis basis = enumerate_basis(layout);
  ControlValues controls = ControlValues::zeros(layout);
  controls.delta(layout, layout.dot_site(0, 1), layout.dot_site(0, 2)) = 0.1;

  const double t_pi = pi * kHbarMeVPs / (2.0 * 0.1);
  CHECK(t_pi == doctest::Approx(10.34).epsilon(1e-3));

  const Propagator u =
      propagate(layout, basis, single_segment(layout, t_pi, controls));
  CHECK(std::norm(u(1, 0)) > 1.0 - 1e-6);  // |<2|U|1>|^2

  // Half pulse leaves half the population, matching the Rabi closed form.
  const Propagator half =
      propagate(layout, basis, single_segment(layout, 0.5 * t_pi, controls));
  CHECK(std::norm(half(1, 0)) ==
        doctest::Approx(testing::rabi_transfer_probability(0.1, 0.5 * t_pi))
            .epsilon(1e-9));
  CHECK(std::norm(half(1, 0)) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("diagonal-only evolution matches the phase oracle") {
  ScreeningSpec uniform;
  uniform.mode = ScreeningSpec::Mode::kUniform;
  const RegisterLayout layout = build_register(
      Scheme::kAuxPerQudit, 2, 3, {}, kSiliconEpsilonR, uniform);
  const ConfigurationBasis basis = enumerate_basis(layout);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    ControlValues controls = testing::random_controls(layout, rng);
    for (double& delta : controls.delta_mev) delta = 0.0;
    const double duration = 0.1 + trial * 0.13;
    const Propagator u =
        propagate(layout, basis, single_segment(layout, duration, controls));
    const Eigen::VectorXd oracle =
        diagonal_phase_oracle(layout, basis, controls, duration);
    for (int i = 0; i < basis.size(); ++i) {
      CHECK(wrap_angle(std::arg(u(i, i)) - oracle(i)) ==
            doctest::Approx(0.0).epsilon(1e-9));
      CHECK(std::norm(u(i, i)) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("a 4.102 meV pair accrues -6.232 rad over 1 ps") {
  GeometryParams geometry;
  geometry.column_pitch_nm = 18.0;
  geometry.qudit_aux_gap_nm = 12.0;
  geometry.stagger_nm = 12.0;
  ScreeningSpec uniform;
  uniform.mode = ScreeningSpec::Mode::kUniform;
  const RegisterLayout layout = build_register(
      Scheme::kAlwaysOn, 2, 2, geometry, kSiliconEpsilonR, uniform);
  const ConfigurationBasis basis = enumerate_basis(layout);

  const Propagator u = propagate(
      layout, basis, single_segment(layout, 1.0,
                                    ControlValues::zeros(layout)));
  const int index = basis.computational_index(std::vector<int>{1, 1});
  const double energy = basis.coulomb_mev[index];
  CHECK(energy == doctest::Approx(4.102).epsilon(1e-3));
  const double phase = std::arg(u(index, index));
  CHECK(phase == doctest::Approx(wrap_angle(-energy / kHbarMeVPs))
                     .epsilon(1e-9));
  CHECK(wrap_angle(-energy / kHbarMeVPs) ==
        doctest::Approx(wrap_angle(-6.2326)).epsilon(1e-3));
}

TEST_CASE("unitarity over randomized schedules") {
  const RegisterLayout layout = build_register(Scheme::kSharedAux, 2, 3);
  const ConfigurationBasis basis = enumerate_basis(layout);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const ControlSchedule schedule = testing::random_schedule(layout, rng);
    const Propagator u = propagate(layout, basis, schedule);
    const double defect =
        (u.adjoint() * u - Propagator::Identity(basis.size(), basis.size()))
            .cwiseAbs()
            .maxCoeff();
    CHECK(defect < 1e-9);
  }
}

TEST_CASE("composition of schedules multiplies propagators") {
  const RegisterLayout layout = build_register(Scheme::kAuxPerQudit, 1, 3);
  const ConfigurationBasis basis = enumerate_basis(layout);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const ControlSchedule first = testing::random_schedule(layout, rng, 4);
    const ControlSchedule second = testing::random_schedule(layout, rng, 4);
    const Propagator u_first = propagate(layout, basis, first);
    const Propagator u_second = propagate(layout, basis, second);
    const Propagator u_joined =
        propagate(layout, basis, first.concatenated(second));
    const double defect =
        (u_joined - u_second * u_first).cwiseAbs().maxCoeff();
    CHECK(defect < 1e-9);
  }
}

TEST_CASE("uniform on-site shift only changes the global phase") {
  const RegisterLayout layout = build_register(Scheme::kAlwaysOn, 2, 3);
  const ConfigurationBasis basis = enumerate_basis(layout);
  std::mt19937_64 rng(31);
  const ControlValues controls = testing::random_controls(layout, rng);
  ControlValues shifted = controls;
  const double c = 1.7;
  for (double& shift : shifted.shift_mev) shift += c;

  const double duration = 2.3;
  const Propagator u =
      propagate(layout, basis, single_segment(layout, duration, controls));
  const Propagator u_shifted =
      propagate(layout, basis, single_segment(layout, duration, shifted));
  // exp(-i N c t / hbar) with N electrons.
  const std::complex<double> expected_phase =
      std::polar(1.0, -2.0 * c * duration / kHbarMeVPs);
  const double defect =
      (u_shifted - expected_phase * u).cwiseAbs().maxCoeff();
  CHECK(defect < 1e-9);
}

TEST_CASE("time reversal through the sign hook") {
  const RegisterLayout layout = build_register(Scheme::kAuxPerQudit, 1, 3);
  const ConfigurationBasis basis = enumerate_basis(layout);
  std::mt19937_64 rng(37);
  const ControlSchedule schedule = testing::random_schedule(layout, rng);

  ControlSchedule reversed = schedule;
  std::reverse(reversed.segments.begin(), reversed.segments.end());
  EvolveOptions negated;
  negated.hamiltonian_sign = -1.0;
  const Propagator forward = propagate(layout, basis, schedule);
  const Propagator backward = propagate(layout, basis, reversed, negated);
  const double defect =
      (backward * forward -
       Propagator::Identity(basis.size(), basis.size()))
          .cwiseAbs()
          .maxCoeff();
  CHECK(defect < 1e-9);
}

TEST_CASE("evolve_state preserves norm and checks dimensions") {
  const RegisterLayout layout = build_register(Scheme::kAuxPerQudit, 2, 3);
  const ConfigurationBasis basis = enumerate_basis(layout);
  std::mt19937_64 rng(41);
  const ControlSchedule schedule = testing::random_schedule(layout, rng);
  const Propagator u = propagate(layout, basis, schedule);

  const StateVector psi = testing::random_state(basis.size(), rng);
  const StateVector out = evolve_state(psi, u);
  CHECK(std::abs(out.norm() - 1.0) < 1e-9);

  const StateVector identity_out =
      evolve_state(psi, Propagator::Identity(basis.size(), basis.size()));
  CHECK((identity_out - psi).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(evolve_state(StateVector::Zero(3), u), ModelError);
}

TEST_CASE("gate fidelity metrics") {
  const int d = 9;
  std::mt19937_64 rng(43);
  const Eigen::MatrixXcd target = testing::random_unitary(d, rng);
  std::vector<int> subspace(d);
  for (int i = 0; i < d; ++i) subspace[i] = i;

  SUBCASE("exact implementation") {
    const FidelityReport report = gate_fidelity(target, target, subspace);
    CHECK(report.process_fidelity == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.average_fidelity == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.leakage == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("global phase is factored out") {
    const Eigen::MatrixXcd rotated = std::polar(1.0, 0.83) * target;
    const FidelityReport report = gate_fidelity(rotated, target, subspace);
    CHECK(report.average_fidelity == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.global_phase_rad == doctest::Approx(0.83).epsilon(1e-12));
  }

  SUBCASE("one column leaked out of a nine-state subspace") {
    Eigen::MatrixXcd leaky = target;
    leaky.col(0).setZero();
    const FidelityReport report = gate_fidelity(leaky, target, subspace);
    CHECK(report.leakage == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
  }
}

TEST_CASE("projector subspace extraction") {
  Eigen::MatrixXcd projector = Eigen::MatrixXcd::Zero(4, 4);
  projector(1, 1) = 1.0;
  projector(3, 3) = 1.0;
  CHECK(projector_subspace(projector) == std::vector<int>{1, 3});

  projector(1, 1) = 0.5;  // not idempotent
  CHECK_THROWS_AS(projector_subspace(projector), ModelError);
}

TEST_CASE("leakage profile") {
  const RegisterLayout layout = build_register(Scheme::kAuxPerQudit, 1, 3);
  const ConfigurationBasis basis = enumerate_basis(layout);

  StateVector computational = StateVector::Zero(basis.size());
  computational(basis.computational[0]) = 1.0;
  CHECK(leakage_profile(computational, basis.computational) ==
        doctest::Approx(0.0));

  // The auxiliary-occupied configuration is fully leaked.
  Configuration aux_config{{layout.primary_aux(0)}};
  StateVector leaked = StateVector::Zero(basis.size());
  leaked(basis.index_of(aux_config)) = 1.0;
  CHECK(leakage_profile(leaked, basis.computational) ==
        doctest::Approx(1.0));

  // Midpoint of a transfer pulse leaves half the population on the aux.
  ControlValues controls = ControlValues::zeros(layout);
  controls.delta(layout, layout.dot_site(0, 1), layout.primary_aux(0)) = 0.1;
  ControlSchedule schedule;
  schedule.segments.push_back(
      {pi * kHbarMeVPs / (4.0 * 0.1), controls, "half"});
  const Propagator u = propagate(layout, basis, schedule);
  StateVector start = StateVector::Zero(basis.size());
  start(basis.computational_index(std::vector<int>{1})) = 1.0;
  const StateVector mid = evolve_state(start, u);
  CHECK(leakage_profile(mid, basis.computational) ==
        doctest::Approx(0.5).epsilon(1e-6));
}
