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

#include "quditsim/hamiltonian.hpp"

namespace quditsim {

/// One piecewise-constant control segment.
struct ScheduleSegment {
  double duration_ps = 0.0;
  ControlValues controls;
  std::string label;  // optional, e.g. "transfer_in:q0", "wait", "phase_fixup"
};

/// Ordered piecewise-constant control segments. Durations are strictly
/// positive; an empty schedule is the identity.
struct ControlSchedule {
  std::vector<ScheduleSegment> segments;

  double total_duration_ps() const;
  ControlSchedule concatenated(const ControlSchedule& tail) const;
};

/// Serializes to the JSON schedule schema: nonzero control values keyed by
/// handle name per segment, units fixed as ps/meV.
std::string schedule_to_json(const ControlSchedule& schedule,
                             const RegisterLayout& layout);

/// Parses the JSON schedule schema, resolving handle names against `layout`.
/// Throws ConfigError on malformed JSON or unknown handles.
ControlSchedule schedule_from_json(const std::string& json_text,
                                   const RegisterLayout& layout);

}  // namespace quditsim
