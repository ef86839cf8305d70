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

namespace quditsim {

/// Control-hardware parameters and compiler knobs, shared across modules.
struct PhysicsParams {
  double delta_max_mev = 1.0;          // tunneling amplitude cap
  double shift_max_mev = 50.0;         // on-site shift cap
  double transfer_delta_mev = 0.1;     // default transfer pulse amplitude
  double isolation_detuning_mev = 5.0; // shift on idle levels during transfers
  double dispersive_delta_mev = 0.5;   // drive amplitude for shared-aux gates
  double dispersive_detuning_mev = 5.0; // aux shift keeping that drive virtual
  double t_coh_ps = 1.0e4;             // charge coherence lifetime, 10 ns
  double min_phase_rate_mev = 1.0e-6;  // below this the interaction is "off"
  int basis_cap = 65536;

  /// Transfer ordering for multi-participant phase gates. Sequential transfers
  /// step through a blockade-compensated ladder; the simultaneous variant
  /// exists for comparison and is corrupted by the auxiliary-pair Coulomb
  /// blockade at realistic amplitudes.
  enum class Protocol { kSequential, kSimultaneous };
  Protocol protocol = Protocol::kSequential;

  /// Snap transfer amplitudes so that blocked branches complete whole detuned
  /// Rabi cycles, returning leaked population at the end of each pulse.
  bool blockade_sync = true;
};

}  // namespace quditsim
