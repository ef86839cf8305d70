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

#include "quditsim/config.hpp"

#include <set>

#include <nlohmann/json.hpp>

#include "quditsim/errors.hpp"
#include "quditsim/io.hpp"

namespace quditsim {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
  if (!obj.is_object()) {
    throw ConfigError("'" + path + "' must be a JSON object");
  }
  for (const auto& [key, value] : obj.items()) {
    if (allowed.find(key) == allowed.end()) {
      throw ConfigError("unknown key '" + path + "." + key + "'");
    }
  }
}

double require_number(const json& obj, const std::string& path,
                      const std::string& key) {
  if (!obj.contains(key)) {
    throw ConfigError("missing key '" + path + "." + key + "'");
  }
  if (!obj[key].is_number()) {
    throw ConfigError("'" + path + "." + key + "' must be a number");
  }
  return obj[key].get<double>();
}

double number_or(const json& obj, const std::string& path,
                 const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) {
    throw ConfigError("'" + path + "." + key + "' must be a number");
  }
  return obj[key].get<double>();
}

int int_or(const json& obj, const std::string& path, const std::string& key,
           int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) {
    throw ConfigError("'" + path + "." + key + "' must be an integer");
  }
  return obj[key].get<int>();
}

int require_int(const json& obj, const std::string& path,
                const std::string& key) {
  if (!obj.contains(key)) {
    throw ConfigError("missing key '" + path + "." + key + "'");
  }
  if (!obj[key].is_number_integer()) {
    throw ConfigError("'" + path + "." + key + "' must be an integer");
  }
  return obj[key].get<int>();
}

std::string string_or(const json& obj, const std::string& path,
                      const std::string& key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string()) {
    throw ConfigError("'" + path + "." + key + "' must be a string");
  }
  return obj[key].get<std::string>();
}

std::vector<int> int_list(const json& obj, const std::string& path,
                          const std::string& key) {
  std::vector<int> values;
  if (!obj.contains(key)) return values;
  if (!obj[key].is_array()) {
    throw ConfigError("'" + path + "." + key + "' must be an array");
  }
  for (const auto& v : obj[key]) {
    if (!v.is_number_integer()) {
      throw ConfigError("'" + path + "." + key + "' must hold integers");
    }
    values.push_back(v.get<int>());
  }
  return values;
}

std::vector<double> double_list(const json& obj, const std::string& path,
                                const std::string& key) {
  std::vector<double> values;
  if (!obj.contains(key)) return values;
  if (!obj[key].is_array()) {
    throw ConfigError("'" + path + "." + key + "' must be an array");
  }
  for (const auto& v : obj[key]) {
    if (!v.is_number()) {
      throw ConfigError("'" + path + "." + key + "' must hold numbers");
    }
    values.push_back(v.get<double>());
  }
  return values;
}

LayoutConfig parse_layout(const json& obj) {
  check_keys(obj, "layout",
             {"scheme", "qudits", "levels", "geometry", "epsilon_r",
              "epsilon_r_aux", "screening"});
  LayoutConfig config;
  if (!obj.contains("scheme") || !obj["scheme"].is_string()) {
    throw ConfigError("missing or non-string key 'layout.scheme'");
  }
  config.scheme = scheme_from_name(obj["scheme"].get<std::string>());
  config.qudits = require_int(obj, "layout", "qudits");
  config.levels = require_int(obj, "layout", "levels");
  config.epsilon_r = number_or(obj, "layout", "epsilon_r", kSiliconEpsilonR);
  if (obj.contains("epsilon_r_aux")) {
    config.epsilon_r_aux = require_number(obj, "layout", "epsilon_r_aux");
  }
  if (obj.contains("geometry")) {
    const json& g = obj["geometry"];
    check_keys(g, "layout.geometry",
               {"dot_spacing_nm", "column_pitch_nm", "qudit_aux_gap_nm",
                "stagger_nm"});
    config.geometry.dot_spacing_nm =
        number_or(g, "layout.geometry", "dot_spacing_nm", 20.0);
    config.geometry.column_pitch_nm =
        number_or(g, "layout.geometry", "column_pitch_nm", 20.0);
    config.geometry.qudit_aux_gap_nm =
        number_or(g, "layout.geometry", "qudit_aux_gap_nm", 20.0);
    config.geometry.stagger_nm =
        number_or(g, "layout.geometry", "stagger_nm", 30.0);
  }
  if (obj.contains("screening")) {
    const json& s = obj["screening"];
    check_keys(s, "layout.screening",
               {"mode", "uniform_value", "trench_residual", "overrides"});
    const std::string mode = string_or(s, "layout.screening", "mode",
                                       "default");
    if (mode == "default") {
      config.screening.mode = ScreeningSpec::Mode::kSchemeDefault;
    } else if (mode == "uniform") {
      config.screening.mode = ScreeningSpec::Mode::kUniform;
    } else if (mode == "trench") {
      config.screening.mode = ScreeningSpec::Mode::kTrench;
    } else {
      throw ConfigError(
          "'layout.screening.mode' must be default, uniform or trench");
    }
    config.screening.uniform_value =
        number_or(s, "layout.screening", "uniform_value", 1.0);
    config.screening.trench_residual =
        number_or(s, "layout.screening", "trench_residual", 0.0);
    if (s.contains("overrides")) {
      if (!s["overrides"].is_array()) {
        throw ConfigError("'layout.screening.overrides' must be an array");
      }
      for (const auto& item : s["overrides"]) {
        check_keys(item, "layout.screening.overrides[]",
                   {"site_a", "site_b", "value"});
        ScreeningSpec::PairOverride pair;
        pair.site_a = require_int(item, "layout.screening.overrides[]",
                                  "site_a");
        pair.site_b = require_int(item, "layout.screening.overrides[]",
                                  "site_b");
        pair.value = require_number(item, "layout.screening.overrides[]",
                                    "value");
        config.screening.overrides.push_back(pair);
      }
    }
  }
  return config;
}

PhysicsParams parse_physics(const json& obj) {
  check_keys(obj, "physics",
             {"delta_max_mev", "shift_max_mev", "transfer_delta_mev",
              "isolation_detuning_mev", "dispersive_delta_mev",
              "dispersive_detuning_mev", "t_coh_ps", "min_phase_rate_mev",
              "basis_cap", "protocol", "blockade_sync"});
  PhysicsParams physics;
  physics.delta_max_mev = number_or(obj, "physics", "delta_max_mev", 1.0);
  physics.shift_max_mev = number_or(obj, "physics", "shift_max_mev", 50.0);
  physics.transfer_delta_mev =
      number_or(obj, "physics", "transfer_delta_mev", 0.1);
  physics.isolation_detuning_mev =
      number_or(obj, "physics", "isolation_detuning_mev", 5.0);
  physics.dispersive_delta_mev =
      number_or(obj, "physics", "dispersive_delta_mev", 0.5);
  physics.dispersive_detuning_mev =
      number_or(obj, "physics", "dispersive_detuning_mev", 5.0);
  physics.t_coh_ps = number_or(obj, "physics", "t_coh_ps", 1.0e4);
  physics.min_phase_rate_mev =
      number_or(obj, "physics", "min_phase_rate_mev", 1.0e-6);
  physics.basis_cap = int_or(obj, "physics", "basis_cap", 65536);
  const std::string protocol =
      string_or(obj, "physics", "protocol", "sequential");
  if (protocol == "sequential") {
    physics.protocol = PhysicsParams::Protocol::kSequential;
  } else if (protocol == "simultaneous") {
    physics.protocol = PhysicsParams::Protocol::kSimultaneous;
  } else {
    throw ConfigError("'physics.protocol' must be sequential or simultaneous");
  }
  if (obj.contains("blockade_sync")) {
    if (!obj["blockade_sync"].is_boolean()) {
      throw ConfigError("'physics.blockade_sync' must be a boolean");
    }
    physics.blockade_sync = obj["blockade_sync"].get<bool>();
  }
  if (physics.delta_max_mev <= 0.0 || physics.shift_max_mev <= 0.0 ||
      physics.t_coh_ps <= 0.0 || physics.basis_cap < 1) {
    throw ConfigError("physics caps must be positive");
  }
  return physics;
}

Eigen::MatrixXcd parse_matrix(const json& obj, const std::string& path) {
  if (!obj.is_array() || obj.empty()) {
    throw ConfigError("'" + path + "' must be a nonempty array of rows");
  }
  const int rows = static_cast<int>(obj.size());
  Eigen::MatrixXcd matrix(rows, rows);
  for (int r = 0; r < rows; ++r) {
    const auto& row = obj[r];
    if (!row.is_array() || static_cast<int>(row.size()) != rows) {
      throw ConfigError("'" + path + "' must be square");
    }
    for (int c = 0; c < rows; ++c) {
      const auto& entry = row[c];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
          !entry[1].is_number()) {
        throw ConfigError("'" + path + "' entries must be [re, im] pairs");
      }
      matrix(r, c) = std::complex<double>(entry[0].get<double>(),
                                          entry[1].get<double>());
    }
  }
  return matrix;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& json_text,
                              const std::string& subcommand) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  check_keys(doc, "config",
             {"layout", "physics", "task", "output", "seed", "threads"});

  ScenarioConfig config;
  config.config_hash = fnv1a64_hex(json_text);
  if (!doc.contains("layout")) {
    throw ConfigError("missing 'layout' section");
  }
  config.layout = parse_layout(doc["layout"]);
  config.physics = doc.contains("physics") ? parse_physics(doc["physics"])
                                           : PhysicsParams{};
  if (doc.contains("output")) {
    check_keys(doc["output"], "output", {"dir"});
    config.out_dir = string_or(doc["output"], "output", "dir", "out");
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer()) {
      throw ConfigError("'seed' must be a non-negative integer");
    }
    config.seed = doc["seed"].get<std::uint64_t>();
  }
  config.threads = int_or(doc, "config", "threads", 1);
  if (config.threads < 1) throw ConfigError("'threads' must be >= 1");

  const json task = doc.contains("task") ? doc["task"] : json::object();

  if (subcommand == "dim-scan") {
    check_keys(task, "task", {"K", "d_min", "d_max"});
    DimScanTask scan;
    scan.total_sites = require_int(task, "task", "K");
    scan.d_min = int_or(task, "task", "d_min", 2);
    scan.d_max = int_or(task, "task", "d_max", 10);
    config.dim_scan = scan;
  } else if (subcommand == "gate") {
    check_keys(task, "task",
               {"kind", "participants", "phase_rad", "tolerance", "qudit",
                "target", "crosstalk_screenings", "crosstalk_spectators",
                "permittivity_values"});
    GateTask gate;
    gate.kind = string_or(task, "task", "kind", "controlled_phase");
    if (gate.kind != "controlled_phase" && gate.kind != "k_phase" &&
        gate.kind != "single_qudit") {
      throw ConfigError(
          "'task.kind' must be controlled_phase, k_phase or single_qudit");
    }
    gate.participants = int_list(task, "task", "participants");
    gate.phase_rad = number_or(task, "task", "phase_rad", 0.0);
    gate.tolerance = number_or(task, "task", "tolerance", 1e-3);
    gate.qudit = int_or(task, "task", "qudit", 0);
    if (task.contains("target")) {
      gate.target = parse_matrix(task["target"], "task.target");
    }
    gate.crosstalk_screenings =
        double_list(task, "task", "crosstalk_screenings");
    gate.crosstalk_spectators = int_list(task, "task", "crosstalk_spectators");
    gate.permittivity_values =
        double_list(task, "task", "permittivity_values");
    config.gate = gate;
  } else if (subcommand == "simulate") {
    check_keys(task, "task", {"schedule_file", "initial_state"});
    SimulateTask simulate;
    simulate.schedule_file = string_or(task, "task", "schedule_file", "");
    if (simulate.schedule_file.empty()) {
      throw ConfigError("missing key 'task.schedule_file'");
    }
    if (task.contains("initial_state")) {
      const json& init = task["initial_state"];
      check_keys(init, "task.initial_state", {"kind", "levels", "index"});
      simulate.initial_kind = string_or(init, "task.initial_state", "kind",
                                        "computational");
      simulate.initial_levels = int_list(init, "task.initial_state", "levels");
      simulate.initial_index = int_or(init, "task.initial_state", "index", 0);
    }
    config.simulate = simulate;
  } else if (subcommand == "optimize") {
    check_keys(task, "task",
               {"problem", "qudit", "perturbation", "budget", "lambda",
                "restarts", "refine", "participants", "phase_rad"});
    OptimizeTask optimize;
    optimize.problem = string_or(task, "task", "problem", "transfer_benchmark");
    if (optimize.problem != "transfer_benchmark" &&
        optimize.problem != "controlled_phase_wait") {
      throw ConfigError(
          "'task.problem' must be transfer_benchmark or "
          "controlled_phase_wait");
    }
    optimize.qudit = int_or(task, "task", "qudit", 0);
    optimize.perturbation = number_or(task, "task", "perturbation", 0.2);
    optimize.budget = int_or(task, "task", "budget", 200);
    optimize.leakage_weight = number_or(task, "task", "lambda", 1.0);
    optimize.restarts = int_or(task, "task", "restarts", 3);
    if (task.contains("refine")) {
      if (!task["refine"].is_boolean()) {
        throw ConfigError("'task.refine' must be a boolean");
      }
      optimize.refine = task["refine"].get<bool>();
    }
    optimize.participants = int_list(task, "task", "participants");
    optimize.phase_rad =
        number_or(task, "task", "phase_rad", 3.14159265358979312);
    config.optimize = optimize;
  } else if (subcommand == "layout") {
    check_keys(task, "task", {});
  } else {
    throw ConfigError("unknown subcommand '" + subcommand + "'");
  }
  return config;
}

RegisterLayout layout_from_config(const LayoutConfig& config) {
  RegisterLayout layout =
      build_register(config.scheme, config.qudits, config.levels,
                     config.geometry, config.epsilon_r, config.screening);
  if (config.epsilon_r_aux.has_value()) {
    if (*config.epsilon_r_aux <= 0.0) {
      throw ConfigError("'layout.epsilon_r_aux' must be positive");
    }
    layout.epsilon_r_aux = *config.epsilon_r_aux;
  }
  return layout;
}

}  // namespace quditsim
