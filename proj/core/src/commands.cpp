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

#include "quditsim/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "quditsim/constants.hpp"
#include "quditsim/dimensions.hpp"
#include "quditsim/errors.hpp"
#include "quditsim/evolve.hpp"
#include "quditsim/gates.hpp"
#include "quditsim/io.hpp"
#include "quditsim/tune.hpp"

namespace quditsim {

namespace {

namespace fs = std::filesystem;

class ArtifactDir {
 public:
  explicit ArtifactDir(const ScenarioConfig& config)
      : config_(config), start_(std::chrono::steady_clock::now()) {
    fs::create_directories(config.out_dir);
  }

  void write(const std::string& name, const std::string& content) {
    write_text_file((fs::path(config_.out_dir) / name).string(), content);
    files_.push_back(name);
    hashes_.push_back(fnv1a64_hex(content));
  }

  /// Writes run_manifest.json listing every emitted artifact with its hash.
  /// The manifest itself carries the wall clock and is excluded from
  /// byte-reproducibility comparisons.
  void write_manifest() {
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start_);
    JsonWriter w;
    w.begin_object();
    w.key("tool_version").value(kToolVersion);
    w.key("config_hash").value(config_.config_hash);
    w.key("seed").value(config_.seed);
    w.key("files");
    w.begin_array();
    for (std::size_t i = 0; i < files_.size(); ++i) {
      w.begin_object();
      w.key("path").value(files_[i]);
      w.key("fnv1a64").value(hashes_[i]);
      w.end_object();
    }
    w.end_array();
    w.key("wall_clock_ms").value(static_cast<long long>(elapsed.count()));
    w.end_object();
    write_text_file((fs::path(config_.out_dir) / "run_manifest.json").string(),
                    w.str());
  }

  std::vector<std::string> files() const { return files_; }

 private:
  const ScenarioConfig& config_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::string> files_;
  std::vector<std::string> hashes_;
};

void append_gate_report_json(JsonWriter& w, const GateReport& report,
                             const RegisterLayout& layout) {
  w.begin_object();
  w.key("gate").value(report.gate);
  w.key("duration_ps").value(report.duration_ps);
  w.key("avg_fidelity").value(report.avg_fidelity);
  w.key("leakage").value(report.leakage);
  w.key("budget_fraction").value(report.budget_fraction);
  w.key("process_fidelity").value(report.process_fidelity);
  w.key("target_phase_rad").value(report.target_phase_rad);
  w.key("realized_phase_rad").value(report.realized_phase_rad);
  w.key("delta_v_mev").value(report.delta_v_mev);
  w.key("wait_duration_ps").value(report.wait_duration_ps);
  w.key("t_coh_ps").value(report.t_coh_ps);
  w.key("max_sequential_gates").value(report.max_sequential_gates);
  w.key("participants");
  w.begin_array();
  for (int q : report.participants) w.value(q);
  w.end_array();
  w.key("pairwise_phases");
  w.begin_array();
  for (const GateReport::PairPhase& pair : report.pairwise_phases) {
    w.begin_object();
    w.key("qudit_a").value(pair.qudit_a);
    w.key("qudit_b").value(pair.qudit_b);
    w.key("phase_rad").value(pair.phase_rad);
    w.end_object();
  }
  w.end_array();
  w.key("residual_phase_rad").value(report.residual_phase_rad);
  w.key("segments").value(static_cast<int>(report.schedule.segments.size()));
  (void)layout;
  w.end_object();
}

std::string state_to_csv(const StateVector& psi,
                         const ConfigurationBasis& basis,
                         const RegisterLayout& layout) {
  std::ostringstream out;
  out << "index,configuration,re,im,probability,phase_rad\n";
  for (int i = 0; i < psi.size(); ++i) {
    out << i << ',';
    const Configuration& config = basis.configs[i];
    for (std::size_t q = 0; q < config.site_of_qudit.size(); ++q) {
      if (q > 0) out << '|';
      out << layout.sites[config.site_of_qudit[q]].name;
    }
    out << ',' << format_double(psi(i).real()) << ','
        << format_double(psi(i).imag()) << ','
        << format_double(std::norm(psi(i))) << ','
        << format_double(std::arg(psi(i))) << '\n';
  }
  return out.str();
}

}  // namespace

std::string layout_to_json(const RegisterLayout& layout) {
  JsonWriter w;
  w.begin_object();
  w.key("scheme").value(scheme_name(layout.scheme));
  w.key("qudits").value(layout.num_qudits);
  w.key("levels").value(layout.levels);
  w.key("geometry");
  w.begin_object();
  w.key("dot_spacing_nm").value(layout.geometry.dot_spacing_nm);
  w.key("column_pitch_nm").value(layout.geometry.column_pitch_nm);
  w.key("qudit_aux_gap_nm").value(layout.geometry.qudit_aux_gap_nm);
  w.key("stagger_nm").value(layout.geometry.stagger_nm);
  w.end_object();
  w.key("epsilon_r").value(layout.epsilon_r);
  w.key("epsilon_r_aux").value(layout.epsilon_r_aux);
  w.key("sites");
  w.begin_array();
  for (const DotSite& site : layout.sites) {
    w.begin_object();
    w.key("id").value(site.id);
    w.key("name").value(site.name);
    w.key("kind").value(site.kind == SiteKind::kAuxiliary ? "auxiliary"
                                                          : "qudit_dot");
    w.key("qudit").value(site.qudit);
    w.key("level").value(site.level);
    w.key("position_nm");
    w.begin_array();
    w.value(site.position_nm.x());
    w.value(site.position_nm.y());
    w.value(site.position_nm.z());
    w.end_array();
    w.key("owners");
    w.begin_array();
    for (int owner : site.owners) w.value(owner);
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.key("b_gates");
  w.begin_array();
  for (const BGateHandle& handle : layout.b_gates) {
    w.begin_object();
    w.key("id").value(handle.id);
    w.key("name").value(handle.name);
    w.key("site_a").value(handle.site_a);
    w.key("site_b").value(handle.site_b);
    w.end_object();
  }
  w.end_array();
  w.key("s_gates");
  w.begin_array();
  for (const SGateHandle& handle : layout.s_gates) {
    w.begin_object();
    w.key("id").value(handle.id);
    w.key("name").value(handle.name);
    w.key("site").value(handle.site);
    w.end_object();
  }
  w.end_array();
  w.key("screening");
  w.begin_array();
  for (int r = 0; r < layout.screening.rows(); ++r) {
    w.begin_array();
    for (int c = 0; c < layout.screening.cols(); ++c) {
      w.value(layout.screening(r, c));
    }
    w.end_array();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

CommandResult cmd_dim_scan(const ScenarioConfig& config) {
  if (!config.dim_scan.has_value()) {
    throw ConfigError("dim-scan task section missing");
  }
  const DimScanTask& task = *config.dim_scan;
  const DimensionReport report =
      dimension_scan(task.total_sites, task.d_min, task.d_max);

  ArtifactDir dir(config);
  dir.write("dim_scan.csv", report.to_csv());
  dir.write("dim_scan_summary.txt", report.summary() + "\n");
  dir.write_manifest();

  CommandResult result;
  result.files = dir.files();
  result.summary = report.summary();
  return result;
}

CommandResult cmd_gate(const ScenarioConfig& config) {
  if (!config.gate.has_value()) {
    throw ConfigError("gate task section missing");
  }
  const GateTask& task = *config.gate;
  const RegisterLayout layout = layout_from_config(config.layout);
  const ConfigurationBasis basis =
      enumerate_basis(layout, config.physics.basis_cap);

  GateReport report;
  if (task.kind == "controlled_phase") {
    report = compile_controlled_phase(layout, basis, task.participants,
                                      task.phase_rad, config.physics);
  } else if (task.kind == "k_phase") {
    report = compile_k_phase(layout, basis, task.participants, task.phase_rad,
                             config.physics);
  } else {
    Eigen::MatrixXcd target = task.target;
    if (target.size() == 0) {
      target = Eigen::MatrixXcd::Identity(layout.levels, layout.levels);
    }
    report = synthesize_single_qudit(layout, basis, task.qudit, target,
                                     config.physics);
  }

  ArtifactDir dir(config);
  JsonWriter w;
  append_gate_report_json(w, report, layout);
  dir.write("gate_report.json", w.str());
  dir.write("schedule.json", schedule_to_json(report.schedule, layout));

  if (!task.crosstalk_screenings.empty()) {
    std::vector<int> spectators = task.crosstalk_spectators;
    if (spectators.empty()) {
      for (int q = 0; q < layout.num_qudits; ++q) {
        if (std::find(report.participants.begin(), report.participants.end(),
                      q) == report.participants.end()) {
          spectators.push_back(q);
        }
      }
    }
    const CrosstalkReport crosstalk = crosstalk_scan(
        layout, report, task.crosstalk_screenings, spectators, config.physics);
    dir.write("crosstalk.csv", crosstalk.to_csv());
  }
  if (!task.permittivity_values.empty()) {
    const PermittivityReport permittivity =
        permittivity_speedup(layout, report.participants, task.phase_rad,
                             task.permittivity_values, config.physics);
    dir.write("permittivity.csv", permittivity.to_csv());
  }
  dir.write_manifest();

  CommandResult result;
  result.files = dir.files();
  std::ostringstream summary;
  summary << report.gate << " avg_fidelity=" << format_double(
                 report.avg_fidelity)
          << " leakage=" << format_double(report.leakage)
          << " duration_ps=" << format_double(report.duration_ps)
          << " budget_fraction=" << format_double(report.budget_fraction);
  result.summary = summary.str();
  if (1.0 - report.avg_fidelity > task.tolerance) {
    result.exit_code = kExitToleranceNotMet;
  }
  return result;
}

CommandResult cmd_simulate(const ScenarioConfig& config) {
  if (!config.simulate.has_value()) {
    throw ConfigError("simulate task section missing");
  }
  const SimulateTask& task = *config.simulate;
  const RegisterLayout layout = layout_from_config(config.layout);
  const ConfigurationBasis basis =
      enumerate_basis(layout, config.physics.basis_cap);

  const ControlSchedule schedule =
      schedule_from_json(read_text_file(task.schedule_file), layout);
  for (const ScheduleSegment& segment : schedule.segments) {
    validate_controls(layout, segment.controls, config.physics);
  }

  StateVector psi = StateVector::Zero(basis.size());
  if (task.initial_kind == "computational") {
    std::vector<int> levels = task.initial_levels;
    if (levels.empty()) levels.assign(layout.num_qudits, 1);
    if (static_cast<int>(levels.size()) != layout.num_qudits) {
      throw ConfigError("initial_state.levels must list one level per qudit");
    }
    for (int level : levels) {
      if (level < 1 || level > layout.levels) {
        throw ConfigError("initial_state.levels entries must lie in [1, D]");
      }
    }
    psi(basis.computational_index(levels)) = 1.0;
  } else if (task.initial_kind == "basis_index") {
    if (task.initial_index < 0 || task.initial_index >= basis.size()) {
      throw ConfigError("initial_state.index out of range");
    }
    psi(task.initial_index) = 1.0;
  } else {
    throw ConfigError(
        "initial_state.kind must be computational or basis_index");
  }

  const Propagator u = schedule.segments.empty()
                           ? Propagator::Identity(basis.size(), basis.size())
                           : propagate(layout, basis, schedule);
  const StateVector final_state = evolve_state(psi, u);
  const double leak = leakage_profile(final_state, basis.computational);

  ArtifactDir dir(config);
  dir.write("final_state.csv", state_to_csv(final_state, basis, layout));
  JsonWriter w;
  w.begin_object();
  w.key("duration_ps").value(schedule.total_duration_ps());
  w.key("norm").value(final_state.norm());
  w.key("leakage").value(leak);
  w.key("segments").value(static_cast<int>(schedule.segments.size()));
  w.end_object();
  dir.write("metrics.json", w.str());
  dir.write_manifest();

  CommandResult result;
  result.files = dir.files();
  std::ostringstream summary;
  summary << "simulated " << schedule.segments.size()
          << " segments, duration_ps="
          << format_double(schedule.total_duration_ps())
          << " leakage=" << format_double(leak);
  result.summary = summary.str();
  return result;
}

CommandResult cmd_optimize(const ScenarioConfig& config) {
  if (!config.optimize.has_value()) {
    throw ConfigError("optimize task section missing");
  }
  const OptimizeTask& task = *config.optimize;
  const RegisterLayout layout = layout_from_config(config.layout);
  const ConfigurationBasis basis =
      enumerate_basis(layout, config.physics.basis_cap);

  OptimizationProblem problem;
  problem.leakage_weight = task.leakage_weight;

  if (task.problem == "transfer_benchmark") {
    // Recover the exact pi-pulse duration from a perturbed start. The score
    // is the swap fidelity on the driven pair itself, a smooth single-valley
    // landscape in the duration.
    const int qudit = task.qudit;
    if (qudit < 0 || qudit >= layout.num_qudits) {
      throw ConfigError("task.qudit out of range");
    }
    const int aux = layout.primary_aux(qudit);
    const int to_site = aux >= 0 ? aux : layout.dot_site(qudit, 2);
    const ControlSchedule pulse =
        transfer_pulse(layout, qudit, 1, to_site,
                       config.physics.transfer_delta_mev, config.physics);
    const double ideal_duration = pulse.segments.front().duration_ps;

    Configuration parked;
    parked.site_of_qudit.resize(layout.num_qudits);
    for (int q = 0; q < layout.num_qudits; ++q) {
      parked.site_of_qudit[q] = layout.dot_site(q, 1);
    }
    Configuration moved = parked;
    moved.site_of_qudit[qudit] = to_site;

    problem.base_schedule = pulse;
    problem.subspace = {basis.index_of(parked), basis.index_of(moved)};
    problem.target = Eigen::MatrixXcd::Zero(2, 2);
    problem.target(0, 1) = std::complex<double>(0.0, -1.0);
    problem.target(1, 0) = std::complex<double>(0.0, -1.0);

    ParameterSpec spec;
    spec.name = "duration_ps";
    spec.binding = {ParameterBinding::Kind::kDuration, 0, -1};
    spec.lower = 0.25 * ideal_duration;
    spec.upper = 2.5 * ideal_duration;
    spec.initial = (1.0 + task.perturbation) * ideal_duration;
    problem.parameters.push_back(spec);
  } else {
    // Re-calibrate the interaction wait of a compiled controlled-phase gate.
    std::vector<int> participants = task.participants;
    if (participants.empty()) participants = {0, 1};
    const GateReport gate = compile_k_phase(layout, basis, participants,
                                            task.phase_rad, config.physics);
    if (gate.wait_segment < 0) {
      throw ConfigError("compiled gate has no wait segment to optimize");
    }
    problem.base_schedule = gate.schedule;
    problem.target = gate.target;
    problem.subspace = gate.subspace;

    ParameterSpec spec;
    spec.name = "wait_ps";
    spec.binding = {ParameterBinding::Kind::kDuration, gate.wait_segment, -1};
    const double wait = gate.wait_duration_ps;
    spec.lower = 0.1 * wait;
    spec.upper = 3.0 * wait;
    spec.initial = (1.0 + task.perturbation) * wait;
    problem.parameters.push_back(spec);
  }

  OptimizeOptions options;
  options.restarts = task.restarts;
  options.refine = task.refine;
  const OptimizeResult result_opt = optimize_schedule(
      layout, basis, problem, task.budget, config.seed, options);

  ArtifactDir dir(config);
  dir.write("optimize_trace.csv", result_opt.to_csv(problem));
  const ControlSchedule optimized =
      apply_parameters(problem, result_opt.best_params);
  dir.write("optimized_schedule.json", schedule_to_json(optimized, layout));
  JsonWriter w;
  w.begin_object();
  w.key("problem").value(task.problem);
  w.key("initial_objective").value(result_opt.initial_objective);
  w.key("best_objective").value(result_opt.best_objective);
  w.key("evaluations").value(result_opt.evaluations);
  w.key("best_params");
  w.begin_array();
  for (int i = 0; i < result_opt.best_params.size(); ++i) {
    w.value(result_opt.best_params(i));
  }
  w.end_array();
  w.end_object();
  dir.write("optimize_result.json", w.str());
  dir.write_manifest();

  CommandResult result;
  result.files = dir.files();
  std::ostringstream summary;
  summary << "objective " << format_double(result_opt.initial_objective)
          << " -> " << format_double(result_opt.best_objective) << " in "
          << result_opt.evaluations << " evaluations";
  result.summary = summary.str();
  return result;
}

CommandResult cmd_layout(const ScenarioConfig& config) {
  const RegisterLayout layout = layout_from_config(config.layout);

  std::ostringstream csv;
  csv << "id,name,kind,qudit,level,x_nm,y_nm,z_nm,owners\n";
  for (const DotSite& site : layout.sites) {
    csv << site.id << ',' << site.name << ','
        << (site.kind == SiteKind::kAuxiliary ? "auxiliary" : "qudit_dot")
        << ',' << site.qudit << ',' << site.level << ','
        << format_double(site.position_nm.x()) << ','
        << format_double(site.position_nm.y()) << ','
        << format_double(site.position_nm.z()) << ',';
    for (std::size_t i = 0; i < site.owners.size(); ++i) {
      if (i > 0) csv << ';';
      csv << site.owners[i];
    }
    csv << '\n';
  }

  ArtifactDir dir(config);
  dir.write("layout.json", layout_to_json(layout));
  dir.write("sites.csv", csv.str());
  dir.write_manifest();

  CommandResult result;
  result.files = dir.files();
  std::ostringstream summary;
  summary << scheme_name(layout.scheme) << " N=" << layout.num_qudits
          << " D=" << layout.levels << " sites=" << layout.num_sites()
          << " b_gates=" << layout.b_gates.size()
          << " s_gates=" << layout.s_gates.size();
  result.summary = summary.str();
  return result;
}

}  // namespace quditsim
