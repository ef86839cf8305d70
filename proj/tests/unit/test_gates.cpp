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

#include "quditsim/errors.hpp"
#include "quditsim/gates.hpp"
#include "support/test_support.hpp"

using namespace quditsim;
using std::numbers::pi;

TEST_CASE("transfer pulse durations follow pi hbar / (2 delta)") {
  const RegisterLayout layout = build_register(Scheme::kAuxPerQudit, 1, 3);
  PhysicsParams physics;

  const ControlSchedule slow =
      transfer_pulse(layout, 0, 1, layout.primary_aux(0), 0.1, physics);
  CHECK(slow.segments.size() == 1);
  CHECK(slow.segments[0].duration_ps == doctest::Approx(10.34).epsilon(1e-3));

  const ControlSchedule fast =
      transfer_pulse(layout, 0, 1, layout.primary_aux(0), 1.0, physics);
  CHECK(fast.segments[0].duration_ps == doctest::Approx(1.034).epsilon(1e-3));

  CHECK_THROWS_AS(
      transfer_pulse(layout, 0, 2, layout.primary_aux(0), 0.1, physics),
      CompileError);  // no barrier from level 2 to the auxiliary
  CHECK_THROWS_AS(
      transfer_pulse(layout, 0, 1, layout.primary_aux(0), 1.5, physics),
      CompileError);  // above delta_max
}

TEST_CASE("transfer pulse moves and returns population") {
  const RegisterLayout layout = build_register(Scheme::kAuxPerQudit, 1, 3);
  const ConfigurationBasis basis = enumerate_basis(layout);
  PhysicsParams physics;
  const ControlSchedule pulse =
      transfer_pulse(layout, 0, 1, layout.primary_aux(0), 0.1, physics);

  const int start = basis.computational_index(std::vector<int>{1});
  const int aux_index = basis.index_of(Configuration{{layout.primary_aux(0)}});

  const Propagator u = propagate(layout, basis, pulse);
  CHECK(std::norm(u(aux_index, start)) > 1.0 - 1e-6);

  // Applying the pulse twice returns the population (up to phase).
  const Propagator uu = propagate(layout, basis, pulse.concatenated(pulse));
  CHECK(std::norm(uu(start, start)) > 1.0 - 1e-6);
}

TEST_CASE("two-qutrit controlled phase meets the fidelity targets") {
  const RegisterLayout layout = build_register(Scheme::kAuxPerQudit, 2, 3);
  const ConfigurationBasis basis = enumerate_basis(layout);
  const GateReport report =
      compile_controlled_phase(layout, basis, {0, 1}, pi);

  CHECK(report.avg_fidelity >= 0.999);
  CHECK(report.leakage <= 1e-3);
  CHECK(std::abs(wrap_angle(report.realized_phase_rad - pi)) <= 1e-3);
  CHECK(report.duration_ps < 100.0);
  CHECK(report.budget_fraction < 0.01);
  CHECK(report.max_sequential_gates >= 100);
  CHECK(report.wait_segment >= 0);

  // Transfer segments stay within the timescale window at default amplitude.
  for (const ScheduleSegment& segment : report.schedule.segments) {
    if (segment.label.rfind("transfer", 0) == 0) {
      CHECK(segment.duration_ps >= 1.0);
      CHECK(segment.duration_ps <= 11.0);
    }
  }
}

TEST_CASE("zero phase compiles to the identity") {
  const RegisterLayout layout = build_register(Scheme::kAuxPerQudit, 2, 3);
  const ConfigurationBasis basis = enumerate_basis(layout);
  const GateReport report =
      compile_controlled_phase(layout, basis, {0, 1}, 0.0);
  CHECK(report.schedule.segments.empty());
  CHECK(report.avg_fidelity == doctest::Approx(1.0));
  CHECK(report.duration_ps == 0.0);
}

TEST_CASE("tiny phases keep the gate near identity") {
  const RegisterLayout layout = build_register(Scheme::kAuxPerQudit, 2, 3);
  const ConfigurationBasis basis = enumerate_basis(layout);
  const GateReport report =
      compile_controlled_phase(layout, basis, {0, 1}, 1e-4);
  CHECK(report.avg_fidelity >= 0.999);
  CHECK(std::abs(wrap_angle(report.realized_phase_rad - 1e-4)) <= 1e-3);
}

TEST_CASE("conditional phase is linear in the wait duration") {
  const RegisterLayout layout = build_register(Scheme::kAuxPerQudit, 2, 3);
  const ConfigurationBasis basis = enumerate_basis(layout);
  const GateReport report =
      compile_controlled_phase(layout, basis, {0, 1}, pi / 3.0);
  REQUIRE(report.wait_segment >= 0);

  ControlSchedule doubled = report.schedule;
  doubled.segments[report.wait_segment].duration_ps *= 2.0;
  const Propagator u = propagate(layout, basis, doubled);
  const double corner = conditional_phase_corner(
      computational_phases(u, basis), {0, 1}, layout.num_qudits,
      layout.levels);
  const double rate = report.delta_v_mev / kHbarMeVPs;
  const double expected = wrap_angle(
      report.realized_phase_rad -
      rate * report.schedule.segments[report.wait_segment].duration_ps);
  CHECK(std::abs(wrap_angle(corner - expected)) < 1e-6);
}

TEST_CASE("phase gates demand auxiliaries and adjacency") {
  const RegisterLayout bare = build_register(Scheme::kAlwaysOn, 2, 3);
  const ConfigurationBasis bare_basis = enumerate_basis(bare);
  CHECK_THROWS_AS(compile_controlled_phase(bare, bare_basis, {0, 1}, pi),
                  CompileError);

  const RegisterLayout layout = build_register(Scheme::kAuxPerQudit, 3, 3);
  const ConfigurationBasis basis = enumerate_basis(layout);
  CHECK_THROWS_AS(compile_controlled_phase(layout, basis, {0, 2}, pi),
                  CompileError);  // non-adjacent
  CHECK_THROWS_AS(compile_controlled_phase(layout, basis, {0}, pi),
                  CompileError);
  CHECK_THROWS_AS(compile_controlled_phase(layout, basis, {0, 0}, pi),
                  CompileError);
}

TEST_CASE("interaction floor rejects fully screened registers") {
  ScreeningSpec opaque;
  opaque.mode = ScreeningSpec::Mode::kUniform;
  opaque.uniform_value = 0.0;
  const RegisterLayout layout = build_register(
      Scheme::kAuxPerQudit, 2, 3, {}, kSiliconEpsilonR, opaque);
  const ConfigurationBasis basis = enumerate_basis(layout);
  CHECK_THROWS_AS(compile_controlled_phase(layout, basis, {0, 1}, pi),
                  CompileError);
}

TEST_CASE("shared auxiliary collisions and the four-qudit gate") {
  const RegisterLayout layout = build_register(Scheme::kSharedAux, 4, 3);
  const ConfigurationBasis basis = enumerate_basis(layout);

  // Two qudits whose nearest auxiliary coincides: rejected.
  CHECK_THROWS_AS(compile_controlled_phase(layout, basis, {1, 2}, pi),
                  CollisionError);
  CHECK_THROWS_AS(compile_k_phase(layout, basis, {1, 2}, pi),
                  CollisionError);

  // The natural scheme-B gate: all four owners of one auxiliary.
  const GateReport quad = compile_k_phase(layout, basis, {0, 1, 2, 3}, pi);
  CHECK(quad.avg_fidelity >= 0.99);
  CHECK(std::abs(wrap_angle(quad.realized_phase_rad - pi)) < 0.2);
  CHECK(quad.pairwise_phases.size() == 6);
}

TEST_CASE("two-qudit gates across shared-aux group boundaries compile") {
  const RegisterLayout layout = build_register(Scheme::kSharedAux, 4, 3);
  const ConfigurationBasis basis = enumerate_basis(layout);
  // The trailing auxiliary serves exactly q2 and q3, so the pair gets the
  // clean dispersive gate with no outside owners.
  const GateReport report = compile_controlled_phase(layout, basis, {2, 3},
                                                     pi / 2.0);
  CHECK(report.duration_ps > 0.0);
  CHECK(report.avg_fidelity >= 0.99);
  CHECK(std::abs(wrap_angle(report.realized_phase_rad - pi / 2.0)) < 0.2);
}

TEST_CASE("k_phase with two participants reduces to controlled_phase") {
  const RegisterLayout layout = build_register(Scheme::kAuxPerQudit, 2, 3);
  const ConfigurationBasis basis = enumerate_basis(layout);
  const GateReport cz = compile_controlled_phase(layout, basis, {0, 1}, 1.1);
  const GateReport k2 = compile_k_phase(layout, basis, {0, 1}, 1.1);
  REQUIRE(cz.schedule.segments.size() == k2.schedule.segments.size());
  for (std::size_t i = 0; i < cz.schedule.segments.size(); ++i) {
    CHECK(cz.schedule.segments[i].duration_ps ==
          k2.schedule.segments[i].duration_ps);
    CHECK(cz.schedule.segments[i].controls.delta_mev ==
          k2.schedule.segments[i].controls.delta_mev);
    CHECK(cz.schedule.segments[i].controls.shift_mev ==
          k2.schedule.segments[i].controls.shift_mev);
  }
  CHECK(cz.avg_fidelity == doctest::Approx(k2.avg_fidelity));
}

TEST_CASE("three-qutrit phase gate decomposes its diagonal honestly") {
  const RegisterLayout layout = build_register(Scheme::kAuxPerQudit, 3, 3);
  const ConfigurationBasis basis = enumerate_basis(layout);
  const GateReport report = compile_k_phase(layout, basis, {0, 1, 2}, pi);

  CHECK(report.avg_fidelity >= 0.999);
  CHECK(report.leakage <= 1e-3);
  CHECK(std::abs(wrap_angle(report.realized_phase_rad - pi)) <= 1e-3);
  CHECK(report.pairwise_phases.size() == 3);

  // The reported decomposition reassembles the all-ones conditional phase.
  double pairwise_sum = 0.0;
  for (const GateReport::PairPhase& pair : report.pairwise_phases) {
    pairwise_sum += pair.phase_rad;
  }
  CHECK(wrap_angle(pairwise_sum + report.residual_phase_rad -
                   report.realized_phase_rad) ==
        doctest::Approx(0.0).epsilon(1e-9));

  // The wait rate equals the independent inclusion-exclusion over raw
  // Coulomb sums: with all participants on their auxiliaries against the
  // gauge-parked references.
  const auto config_with = [&](const std::vector<int>& on_aux) {
    Configuration config;
    config.site_of_qudit.resize(3);
    for (int q = 0; q < 3; ++q) config.site_of_qudit[q] = layout.dot_site(q, 3);
    for (int q : on_aux) config.site_of_qudit[q] = layout.primary_aux(q);
    return config;
  };
  double expected = testing::brute_force_coulomb(config_with({0, 1, 2}),
                                                 layout);
  for (int q : {0, 1, 2}) {
    expected -= testing::brute_force_coulomb(config_with({q}), layout);
  }
  expected += 2.0 * testing::brute_force_coulomb(config_with({}), layout);
  CHECK(report.delta_v_mev == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("simultaneous transfers are corrupted by the auxiliary blockade") {
  const RegisterLayout layout = build_register(Scheme::kAuxPerQudit, 2, 3);
  const ConfigurationBasis basis = enumerate_basis(layout);
  PhysicsParams naive;
  naive.protocol = PhysicsParams::Protocol::kSimultaneous;
  const GateReport report =
      compile_controlled_phase(layout, basis, {0, 1}, pi, naive);
  // The |11> component cannot assemble on the auxiliary pair: the doubly
  // occupied state is detuned by ~6 meV against a 0.1 meV drive.
  CHECK(report.avg_fidelity < 0.9);
}

TEST_CASE("switching contrast between parked and transferred electrons") {
  ScreeningSpec uniform;
  uniform.mode = ScreeningSpec::Mode::kUniform;
  const RegisterLayout layout = build_register(
      Scheme::kAuxPerQudit, 2, 3, {}, kSiliconEpsilonR, uniform);
  const ConfigurationBasis basis = enumerate_basis(layout);
  const std::vector<int> participants{0, 1};

  const auto gauge_config = [&](bool on_aux) {
    Configuration config;
    config.site_of_qudit = {layout.dot_site(0, 3), layout.dot_site(1, 3)};
    if (on_aux) {
      config.site_of_qudit = {layout.primary_aux(0), layout.primary_aux(1)};
    } else {
      config.site_of_qudit = {layout.dot_site(0, 1), layout.dot_site(1, 1)};
    }
    return config;
  };
  Configuration gauge{{layout.dot_site(0, 3), layout.dot_site(1, 3)}};

  const double rate_on = differential_phase_rate(
      layout, basis, participants, gauge_config(true), gauge);
  const double rate_off = differential_phase_rate(
      layout, basis, participants, gauge_config(false), gauge);
  CHECK(std::abs(rate_on) > 5.0 * std::abs(rate_off));

  // Verify both rates against the diagonal oracle over a 1 ps wait.
  const double t = 1.0;
  ControlSchedule wait;
  wait.segments.push_back({t, ControlValues::zeros(layout), "wait"});
  const Propagator u = propagate(layout, basis, wait);
  const auto oracle_corner = [&](const Configuration& on) {
    Configuration only0 = gauge, only1 = gauge;
    only0.site_of_qudit[0] = on.site_of_qudit[0];
    only1.site_of_qudit[1] = on.site_of_qudit[1];
    const auto phase = [&](const Configuration& config) {
      return std::arg(u(basis.index_of(config), basis.index_of(config)));
    };
    return wrap_angle(phase(on) - phase(only0) - phase(only1) +
                      phase(gauge));
  };
  CHECK(std::abs(wrap_angle(oracle_corner(gauge_config(true)) -
                            wrap_angle(-rate_on * t / kHbarMeVPs))) < 1e-6);
  CHECK(std::abs(wrap_angle(oracle_corner(gauge_config(false)) -
                            wrap_angle(-rate_off * t / kHbarMeVPs))) < 1e-6);
}

TEST_CASE("parallel merge of disjoint gates") {
  // Fully screen the two gate regions from each other, including the
  // auxiliary pairs crossing the boundary; the default trench model keeps
  // the whole auxiliary row open.
  ScreeningSpec screening;
  screening.mode = ScreeningSpec::Mode::kTrench;
  RegisterLayout layout = build_register(Scheme::kAuxPerQudit, 4, 3, {},
                                         kSiliconEpsilonR, screening);
  for (int left_aux : layout.aux_sites_of(0)) {
    for (int q : {2, 3}) {
      for (int right_aux : layout.aux_sites_of(q)) {
        screening.overrides.push_back({left_aux, right_aux, 0.0});
      }
    }
  }
  for (int left_aux : layout.aux_sites_of(1)) {
    for (int q : {2, 3}) {
      for (int right_aux : layout.aux_sites_of(q)) {
        screening.overrides.push_back({left_aux, right_aux, 0.0});
      }
    }
  }
  apply_screening(layout, screening);
  const ConfigurationBasis basis = enumerate_basis(layout);
  const GateReport left = compile_controlled_phase(layout, basis, {0, 1}, pi);
  const GateReport right =
      compile_controlled_phase(layout, basis, {2, 3}, pi / 2.0);

  const ControlSchedule merged = schedule_parallel({left, right}, layout);
  CHECK(merged.total_duration_ps() ==
        doctest::Approx(std::max(left.duration_ps, right.duration_ps)));

  // With the gate regions fully screened from each other the merged gate
  // equals the composition exactly on the computational block. (Outside it,
  // auxiliary-occupied reference states pick up static Coulomb phases twice
  // in the sequential composition.)
  const Propagator u_left = propagate(layout, basis, left.schedule);
  const Propagator u_right = propagate(layout, basis, right.schedule);
  const Propagator u_merged = propagate(layout, basis, merged);
  const Propagator composed = u_right * u_left;
  double defect = 0.0;
  for (int r : basis.computational) {
    for (int c : basis.computational) {
      defect = std::max(defect, std::abs(u_merged(r, c) - composed(r, c)));
    }
  }
  CHECK(defect < 1e-9);

  // Merging a single report returns its schedule unchanged.
  const ControlSchedule single = schedule_parallel({left}, layout);
  CHECK(single.segments.size() == left.schedule.segments.size());
  CHECK(schedule_parallel({}, layout).segments.empty());

  // Overlapping participants are rejected.
  const RegisterLayout plain = build_register(Scheme::kAuxPerQudit, 4, 3);
  const ConfigurationBasis plain_basis = enumerate_basis(plain);
  const GateReport a = compile_controlled_phase(plain, plain_basis, {0, 1}, pi);
  const GateReport overlap =
      compile_controlled_phase(plain, plain_basis, {1, 2}, pi);
  CHECK_THROWS_AS(schedule_parallel({a, overlap}, plain), CompileError);
}

TEST_CASE("coherence budget arithmetic") {
  GateReport report;
  report.duration_ps = 10.34;
  CoherenceBudget budget = coherence_budget(report, 1.0e4);
  CHECK(budget.fraction == doctest::Approx(1.034e-3));
  CHECK(budget.max_sequential_gates == 967);

  report.duration_ps = 1.0e4;
  budget = coherence_budget(report, 1.0e4);
  CHECK(budget.fraction == doctest::Approx(1.0));
  CHECK(budget.max_sequential_gates == 1);

  report.duration_ps = 0.0;
  CHECK_THROWS_AS(coherence_budget(report, 1.0e4), ModelError);
}

TEST_CASE("embedding places a gate on selected qudits") {
  std::mt19937_64 rng(3);
  const Eigen::MatrixXcd gate = testing::random_unitary(3, rng);
  const Eigen::MatrixXcd full = embed_on_computational(gate, {1}, 2, 3);
  CHECK(full.rows() == 9);
  // Block structure: <a b|full|c d> = delta_ac * gate(b, d).
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        for (int d = 0; d < 3; ++d) {
          const std::complex<double> expected =
              (a == c) ? gate(b, d) : std::complex<double>(0.0, 0.0);
          CHECK(std::abs(full(3 * a + b, 3 * c + d) - expected) < 1e-15);
        }
      }
    }
  }
}
