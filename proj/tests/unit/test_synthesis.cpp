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

#include <random>

#include "quditsim/errors.hpp"
#include "quditsim/gates.hpp"
#include "support/test_support.hpp"

using namespace quditsim;

namespace {

int rotation_count(const GateReport& report) {
  int count = 0;
  for (const ScheduleSegment& segment : report.schedule.segments) {
    if (segment.label.rfind("rotation", 0) == 0) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("identity target compiles to an empty schedule") {
  const RegisterLayout layout = build_register(Scheme::kAlwaysOn, 1, 3);
  const ConfigurationBasis basis = enumerate_basis(layout);
  const GateReport report = synthesize_single_qudit(
      layout, basis, 0, Eigen::MatrixXcd::Identity(3, 3));
  CHECK(report.schedule.segments.empty());
  CHECK(report.avg_fidelity == doctest::Approx(1.0));
}

TEST_CASE("two-level Hadamard analog") {
  const RegisterLayout layout = build_register(Scheme::kAlwaysOn, 1, 2);
  const ConfigurationBasis basis = enumerate_basis(layout);
  Eigen::MatrixXcd hadamard(2, 2);
  hadamard << 1.0, 1.0, 1.0, -1.0;
  hadamard /= std::sqrt(2.0);
  const GateReport report =
      synthesize_single_qudit(layout, basis, 0, hadamard);
  CHECK(1.0 - report.avg_fidelity < 1e-6);
  CHECK(rotation_count(report) == 1);
}

TEST_CASE("qutrit cyclic permutation uses at most three rotations") {
  const RegisterLayout layout = build_register(Scheme::kAlwaysOn, 1, 3);
  const ConfigurationBasis basis = enumerate_basis(layout);
  Eigen::MatrixXcd cycle = Eigen::MatrixXcd::Zero(3, 3);
  cycle(1, 0) = 1.0;  // |1> -> |2>
  cycle(2, 1) = 1.0;  // |2> -> |3>
  cycle(0, 2) = 1.0;  // |3> -> |1>
  const GateReport report = synthesize_single_qudit(layout, basis, 0, cycle);
  CHECK(1.0 - report.avg_fidelity < 1e-6);
  CHECK(rotation_count(report) <= 3);  // Givens count d(d-1)/2
}

TEST_CASE("random targets synthesize below 1e-6 infidelity") {
  std::mt19937_64 rng(2026);
  for (int d : {2, 3, 4}) {
    const RegisterLayout layout = build_register(Scheme::kAlwaysOn, 1, d);
    const ConfigurationBasis basis = enumerate_basis(layout);
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::MatrixXcd target = testing::random_unitary(d, rng);
      const GateReport report =
          synthesize_single_qudit(layout, basis, 0, target);
      CHECK(1.0 - report.avg_fidelity <= 1e-6);
      CHECK(rotation_count(report) <= d * (d - 1) / 2);
      CHECK(report.leakage <= 1e-9);
    }
  }
}

TEST_CASE("synthesis on one qudit of a screened register stays clean") {
  const RegisterLayout layout = build_register(Scheme::kAuxPerQudit, 2, 3);
  const ConfigurationBasis basis = enumerate_basis(layout);
  std::mt19937_64 rng(7);
  const Eigen::MatrixXcd target = testing::random_unitary(3, rng);
  const GateReport report = synthesize_single_qudit(layout, basis, 1, target);
  CHECK(1.0 - report.avg_fidelity <= 1e-6);
}

TEST_CASE("non-unitary targets are rejected") {
  const RegisterLayout layout = build_register(Scheme::kAlwaysOn, 1, 3);
  const ConfigurationBasis basis = enumerate_basis(layout);
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(3, 3);
  bad(0, 0) = 1.5;
  CHECK_THROWS_AS(synthesize_single_qudit(layout, basis, 0, bad), ModelError);
  CHECK_THROWS_AS(synthesize_single_qudit(
                      layout, basis, 0, Eigen::MatrixXcd::Identity(2, 2)),
                  ModelError);
}

TEST_CASE("local operations finish within tens of picoseconds") {
  const RegisterLayout layout = build_register(Scheme::kAlwaysOn, 1, 3);
  const ConfigurationBasis basis = enumerate_basis(layout);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const GateReport report = synthesize_single_qudit(
        layout, basis, 0, testing::random_unitary(3, rng));
    CHECK(report.duration_ps < 50.0);  // order 10^-11 s
  }
}
