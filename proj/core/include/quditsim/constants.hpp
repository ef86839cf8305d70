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

// Fixed unit system: lengths in nm, energies in meV, times in ps.
// Every derived quantity in the library traces back to these constants.

/// Reduced Planck constant, meV*ps.
inline constexpr double kHbarMeVPs = 0.6582119569;

/// Coulomb prefactor e^2/(4 pi eps_0), meV*nm.
inline constexpr double kCoulombMeVNm = 1439.96;

/// Relative permittivity of bulk silicon.
inline constexpr double kSiliconEpsilonR = 11.7;

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace quditsim
