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

#include "quditsim/schedule.hpp"

#include <nlohmann/json.hpp>

#include "quditsim/errors.hpp"
#include "quditsim/io.hpp"

namespace quditsim {

double ControlSchedule::total_duration_ps() const {
  double total = 0.0;
  for (const ScheduleSegment& segment : segments) {
    total += segment.duration_ps;
  }
  return total;
}

ControlSchedule ControlSchedule::concatenated(
    const ControlSchedule& tail) const {
  ControlSchedule result = *this;
  result.segments.insert(result.segments.end(), tail.segments.begin(),
                         tail.segments.end());
  return result;
}

std::string schedule_to_json(const ControlSchedule& schedule,
                             const RegisterLayout& layout) {
  JsonWriter w;
  w.begin_object();
  w.key("units");
  w.begin_object();
  w.key("time").value("ps");
  w.key("energy").value("meV");
  w.key("length").value("nm");
  w.end_object();
  w.key("segments");
  w.begin_array();
  for (const ScheduleSegment& segment : schedule.segments) {
    w.begin_object();
    w.key("duration_ps").value(segment.duration_ps);
    if (!segment.label.empty()) w.key("label").value(segment.label);
    w.key("b");
    w.begin_object();
    for (const BGateHandle& handle : layout.b_gates) {
      const double delta = segment.controls.delta_mev[handle.id];
      if (delta != 0.0) w.key(handle.name).value(delta);
    }
    w.end_object();
    w.key("s");
    w.begin_object();
    for (const SGateHandle& handle : layout.s_gates) {
      const double shift = segment.controls.shift_mev[handle.id];
      if (shift != 0.0) w.key(handle.name).value(shift);
    }
    w.end_object();
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

ControlSchedule schedule_from_json(const std::string& json_text,
                                   const RegisterLayout& layout) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("schedule JSON parse error: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("segments") ||
      !doc["segments"].is_array()) {
    throw ConfigError("schedule JSON must be an object with a segments array");
  }
  ControlSchedule schedule;
  int index = 0;
  for (const auto& seg : doc["segments"]) {
    if (!seg.is_object() || !seg.contains("duration_ps")) {
      throw ConfigError("segment " + std::to_string(index) +
                        " missing duration_ps");
    }
    ScheduleSegment segment;
    segment.duration_ps = seg["duration_ps"].get<double>();
    if (!(segment.duration_ps > 0.0)) {
      throw ConfigError("segment " + std::to_string(index) +
                        " duration must be > 0 ps");
    }
    if (seg.contains("label")) segment.label = seg["label"].get<std::string>();
    segment.controls = ControlValues::zeros(layout);
    if (seg.contains("b")) {
      for (const auto& [name, value] : seg["b"].items()) {
        const BGateHandle* handle = layout.find_b_gate(name);
        if (handle == nullptr) {
          throw ConfigError("segment " + std::to_string(index) +
                            " references unknown B-gate '" + name + "'");
        }
        segment.controls.delta_mev[handle->id] = value.get<double>();
      }
    }
    if (seg.contains("s")) {
      for (const auto& [name, value] : seg["s"].items()) {
        const SGateHandle* handle = layout.find_s_gate(name);
        if (handle == nullptr) {
          throw ConfigError("segment " + std::to_string(index) +
                            " references unknown S-gate '" + name + "'");
        }
        segment.controls.shift_mev[handle->id] = value.get<double>();
      }
    }
    schedule.segments.push_back(std::move(segment));
    ++index;
  }
  return schedule;
}

}  // namespace quditsim
