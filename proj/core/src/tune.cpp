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

#include "quditsim/tune.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "quditsim/constants.hpp"
#include "quditsim/errors.hpp"
#include "quditsim/io.hpp"

namespace quditsim {

namespace {

constexpr double kInfeasible = std::numeric_limits<double>::infinity();

void validate_problem(const RegisterLayout& layout,
                      const OptimizationProblem& problem) {
  for (const ParameterSpec& spec : problem.parameters) {
    if (spec.lower > spec.upper) {
      throw ConfigError("parameter '" + spec.name +
                        "' has infeasible bounds (lower > upper)");
    }
    if (spec.initial < spec.lower || spec.initial > spec.upper) {
      throw ConfigError("parameter '" + spec.name +
                        "' starts outside its bounds");
    }
    if (spec.binding.segment < 0 ||
        spec.binding.segment >=
            static_cast<int>(problem.base_schedule.segments.size())) {
      throw ConfigError("parameter '" + spec.name +
                        "' references a missing segment");
    }
    if (spec.binding.kind == ParameterBinding::Kind::kDelta &&
        (spec.binding.handle < 0 ||
         spec.binding.handle >= static_cast<int>(layout.b_gates.size()))) {
      throw ConfigError("parameter '" + spec.name +
                        "' references a missing B-gate handle");
    }
    if (spec.binding.kind == ParameterBinding::Kind::kShift &&
        (spec.binding.handle < 0 ||
         spec.binding.handle >= static_cast<int>(layout.s_gates.size()))) {
      throw ConfigError("parameter '" + spec.name +
                        "' references a missing S-gate handle");
    }
  }
}

}  // namespace

ControlSchedule apply_parameters(const OptimizationProblem& problem,
                                 const Eigen::VectorXd& params) {
  ControlSchedule schedule = problem.base_schedule;
  for (int i = 0; i < params.size(); ++i) {
    const ParameterBinding& binding = problem.parameters[i].binding;
    ScheduleSegment& segment = schedule.segments[binding.segment];
    switch (binding.kind) {
      case ParameterBinding::Kind::kDuration:
        segment.duration_ps = params(i);
        break;
      case ParameterBinding::Kind::kDelta:
        segment.controls.delta_mev[binding.handle] = params(i);
        break;
      case ParameterBinding::Kind::kShift:
        segment.controls.shift_mev[binding.handle] = params(i);
        break;
    }
  }
  return schedule;
}

double evaluate_objective(const RegisterLayout& layout,
                          const ConfigurationBasis& basis,
                          const OptimizationProblem& problem,
                          const Eigen::VectorXd& params) {
  const ControlSchedule schedule = apply_parameters(problem, params);
  const Propagator u = propagate(layout, basis, schedule);
  const FidelityReport fid = gate_fidelity(u, problem.target,
                                           problem.subspace);
  return (1.0 - fid.average_fidelity) +
         problem.leakage_weight * fid.leakage;
}

std::string OptimizeResult::to_csv(const OptimizationProblem& problem) const {
  std::ostringstream out;
  out << "iter,objective";
  for (const ParameterSpec& spec : problem.parameters) {
    out << ',' << spec.name;
  }
  out << '\n';
  for (const TracePoint& point : trace) {
    out << point.iteration << ',' << format_double(point.objective);
    for (int i = 0; i < point.params.size(); ++i) {
      out << ',' << format_double(point.params(i));
    }
    out << '\n';
  }
  return out.str();
}

OptimizeResult optimize_schedule(const RegisterLayout& layout,
                                 const ConfigurationBasis& basis,
                                 const OptimizationProblem& problem,
                                 int budget, std::uint64_t seed,
                                 const OptimizeOptions& options) {
  if (budget < 1) throw ConfigError("optimizer budget must be >= 1");
  validate_problem(layout, problem);
  const int n = static_cast<int>(problem.parameters.size());
  if (n == 0) throw ConfigError("optimization problem has no parameters");

  Eigen::VectorXd lower(n), upper(n), start(n);
  for (int i = 0; i < n; ++i) {
    lower(i) = problem.parameters[i].lower;
    upper(i) = problem.parameters[i].upper;
    start(i) = problem.parameters[i].initial;
  }
  const auto clip = [&](Eigen::VectorXd x) {
    for (int i = 0; i < n; ++i) {
      x(i) = std::clamp(x(i), lower(i), upper(i));
    }
    return x;
  };

  OptimizeResult result;
  result.evaluations = 0;
  long long iteration = 0;
  std::mt19937_64 rng(seed);

  const auto evaluate = [&](const Eigen::VectorXd& x) {
    ++result.evaluations;
    try {
      return evaluate_objective(layout, basis, problem, x);
    } catch (const ModelError&) {
      return kInfeasible;
    }
  };

  result.best_params = start;
  result.best_objective = evaluate(start);
  result.initial_objective = result.best_objective;
  if (!std::isfinite(result.best_objective)) {
    throw ConfigError("objective is not finite at the initial parameters");
  }
  result.trace.push_back({iteration++, result.best_objective, start});

  const auto note_best = [&](double value, const Eigen::VectorXd& x) {
    if (value < result.best_objective) {
      result.best_objective = value;
      result.best_params = x;
    }
  };
  const auto record = [&]() {
    result.trace.push_back(
        {iteration++, result.best_objective, result.best_params});
  };

  for (int restart = 0; restart <= options.restarts; ++restart) {
    if (result.evaluations >= budget) break;

    // Simplex seeded on the incumbent; restarts jitter the step sizes to
    // escape plateaus created by 2 pi phase wrapping.
    std::vector<Eigen::VectorXd> simplex;
    std::vector<double> values;
    simplex.push_back(result.best_params);
    values.push_back(result.best_objective);
    std::uniform_real_distribution<double> jitter(0.5, 1.5);
    for (int i = 0; i < n && result.evaluations < budget; ++i) {
      Eigen::VectorXd vertex = result.best_params;
      double step = options.simplex_scale * (upper(i) - lower(i));
      if (step == 0.0) step = options.simplex_scale;
      if (restart > 0) {
        step *= jitter(rng);
        if (rng() & 1u) step = -step;
      }
      vertex(i) += step;
      if (vertex(i) > upper(i)) vertex(i) = result.best_params(i) - step;
      vertex = clip(vertex);
      simplex.push_back(vertex);
      values.push_back(evaluate(vertex));
      note_best(values.back(), vertex);
    }
    record();
    if (static_cast<int>(simplex.size()) < n + 1) break;

    while (result.evaluations < budget) {
      // Order vertices, best first.
      std::vector<int> order(simplex.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        return values[a] < values[b];
      });
      std::vector<Eigen::VectorXd> sorted_simplex;
      std::vector<double> sorted_values;
      for (int index : order) {
        sorted_simplex.push_back(simplex[index]);
        sorted_values.push_back(values[index]);
      }
      simplex = std::move(sorted_simplex);
      values = std::move(sorted_values);

      const double spread = (std::isfinite(values[n]) ? values[n] : values[0]) -
                            values[0];
      if (std::abs(spread) < options.tolerance) break;

      Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
      for (int i = 0; i < n; ++i) centroid += simplex[i];
      centroid /= static_cast<double>(n);

      const Eigen::VectorXd reflected =
          clip(centroid + (centroid - simplex[n]));
      const double f_reflected = evaluate(reflected);
      note_best(f_reflected, reflected);

      if (f_reflected < values[0] && result.evaluations < budget) {
        const Eigen::VectorXd expanded =
            clip(centroid + 2.0 * (centroid - simplex[n]));
        const double f_expanded = evaluate(expanded);
        note_best(f_expanded, expanded);
        if (f_expanded < f_reflected) {
          simplex[n] = expanded;
          values[n] = f_expanded;
        } else {
          simplex[n] = reflected;
          values[n] = f_reflected;
        }
      } else if (f_reflected < values[n - 1]) {
        simplex[n] = reflected;
        values[n] = f_reflected;
      } else if (result.evaluations < budget) {
        const Eigen::VectorXd contracted =
            clip(centroid + 0.5 * (simplex[n] - centroid));
        const double f_contracted = evaluate(contracted);
        note_best(f_contracted, contracted);
        if (f_contracted < values[n]) {
          simplex[n] = contracted;
          values[n] = f_contracted;
        } else {
          // Shrink toward the best vertex.
          for (int i = 1; i <= n && result.evaluations < budget; ++i) {
            simplex[i] = clip(simplex[0] + 0.5 * (simplex[i] - simplex[0]));
            values[i] = evaluate(simplex[i]);
            note_best(values[i], simplex[i]);
          }
        }
      }
      record();
    }
  }

  if (options.refine) {
    bool improved = true;
    while (improved && result.evaluations < budget) {
      improved = false;
      for (int i = 0; i < n && result.evaluations < budget; ++i) {
        const double range = upper(i) - lower(i);
        const double h =
            options.refine_step_scale * (range > 0.0 ? range : 1.0);
        for (double direction : {+1.0, -1.0}) {
          if (result.evaluations >= budget) break;
          Eigen::VectorXd candidate = result.best_params;
          candidate(i) =
              std::clamp(candidate(i) + direction * h, lower(i), upper(i));
          const double value = evaluate(candidate);
          if (value < result.best_objective) {
            note_best(value, candidate);
            improved = true;
          }
        }
      }
      record();
    }
  }

  record();
  return result;
}

std::string CrosstalkReport::to_csv() const {
  std::ostringstream out;
  out << "s,spectator,phase_rad,infidelity\n";
  for (const CrosstalkRow& row : rows) {
    out << format_double(row.screening) << ",q" << row.spectator << ".d"
        << row.level << ',' << format_double(row.phase_rad) << ','
        << format_double(row.infidelity) << '\n';
  }
  return out.str();
}

CrosstalkReport crosstalk_scan(const RegisterLayout& layout,
                               const GateReport& gate,
                               const std::vector<double>& screening_values,
                               const std::vector<int>& spectators,
                               const PhysicsParams& physics, int threads) {
  for (int spectator : spectators) {
    if (std::find(gate.participants.begin(), gate.participants.end(),
                  spectator) != gate.participants.end()) {
      throw ConfigError("spectator q" + std::to_string(spectator) +
                        " participates in the gate");
    }
    if (spectator < 0 || spectator >= layout.num_qudits) {
      throw ConfigError("spectator index out of range");
    }
  }
  if (threads < 1) throw ConfigError("threads must be >= 1");

  // Total wait time of the gate (segments with every barrier closed).
  double wait_ps = 0.0;
  for (const ScheduleSegment& segment : gate.schedule.segments) {
    const bool all_closed =
        std::all_of(segment.controls.delta_mev.begin(),
                    segment.controls.delta_mev.end(),
                    [](double delta) { return delta == 0.0; });
    if (all_closed && segment.label != "phase_fixup") {
      wait_ps += segment.duration_ps;
    }
  }

  const auto scan_one = [&](double s) {
    RegisterLayout scan_layout = layout;
    ScreeningSpec spec;
    spec.mode = ScreeningSpec::Mode::kTrench;
    spec.trench_residual = s;
    apply_screening(scan_layout, spec);
    const ConfigurationBasis scan_basis =
        enumerate_basis(scan_layout, physics.basis_cap);

    // Residual conditional phase on each spectator level while the gate is
    // active (participants on their auxiliaries), relative to the gauge
    // level and to the idle register. Diagonal-oracle arithmetic: with all
    // barriers closed the phases are exactly -E t / hbar.
    const auto config_for = [&](bool active, int spectator, int level) {
      Configuration config;
      config.site_of_qudit.resize(scan_layout.num_qudits);
      for (int q = 0; q < scan_layout.num_qudits; ++q) {
        config.site_of_qudit[q] = scan_layout.dot_site(q, 1);
      }
      if (active) {
        for (int q : gate.participants) {
          const int aux = scan_layout.primary_aux(q);
          if (aux >= 0) config.site_of_qudit[q] = aux;
        }
      }
      config.site_of_qudit[spectator] = scan_layout.dot_site(spectator, level);
      return config;
    };

    double infidelity = 0.0;
    if (!gate.schedule.segments.empty()) {
      const Propagator u = propagate(scan_layout, scan_basis, gate.schedule);
      const FidelityReport fid =
          gate_fidelity(u, gate.target, scan_basis.computational);
      infidelity = 1.0 - fid.average_fidelity;
    }

    std::vector<CrosstalkRow> rows;
    for (int spectator : spectators) {
      for (int level = 1; level <= scan_layout.levels; ++level) {
        const double active_gap =
            coulomb_energy(config_for(true, spectator, level), scan_layout) -
            coulomb_energy(config_for(true, spectator, scan_layout.levels),
                           scan_layout);
        const double idle_gap =
            coulomb_energy(config_for(false, spectator, level), scan_layout) -
            coulomb_energy(config_for(false, spectator, scan_layout.levels),
                           scan_layout);
        const double phase =
            wrap_angle(-(active_gap - idle_gap) * wait_ps / kHbarMeVPs);
        rows.push_back({s, spectator, level, phase, infidelity});
      }
    }
    return rows;
  };

  // Grid points run independently; results are gathered in grid order.
  std::vector<std::vector<CrosstalkRow>> cells(screening_values.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < screening_values.size(); ++i) {
      cells[i] = scan_one(screening_values[i]);
    }
  } else {
    std::vector<std::future<std::vector<CrosstalkRow>>> futures;
    for (double s : screening_values) {
      futures.push_back(std::async(std::launch::async, scan_one, s));
    }
    for (std::size_t i = 0; i < futures.size(); ++i) {
      cells[i] = futures[i].get();
    }
  }
  CrosstalkReport report;
  for (const std::vector<CrosstalkRow>& rows : cells) {
    report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  }
  return report;
}

std::string PermittivityReport::to_csv() const {
  std::ostringstream out;
  out << "epsilon_r,delta_v_mev,pure_wait_ps,total_duration_ps,"
         "max_sequential_gates\n";
  for (const PermittivityRow& row : rows) {
    out << format_double(row.epsilon_r) << ',' << format_double(row.delta_v_mev)
        << ',' << format_double(row.pure_wait_ps) << ','
        << format_double(row.total_duration_ps) << ','
        << row.max_sequential_gates << '\n';
  }
  return out.str();
}

PermittivityReport permittivity_speedup(const RegisterLayout& layout,
                                        const std::vector<int>& participants,
                                        double phase_rad,
                                        const std::vector<double>& epsilons,
                                        const PhysicsParams& physics) {
  PermittivityReport report;
  for (double epsilon : epsilons) {
    if (epsilon <= 0.0) throw ConfigError("epsilon_r must be positive");
    RegisterLayout scan_layout = layout;
    scan_layout.epsilon_r = epsilon;
    scan_layout.epsilon_r_aux = epsilon;
    const ConfigurationBasis basis =
        enumerate_basis(scan_layout, physics.basis_cap);
    const GateReport gate = compile_k_phase(scan_layout, basis, participants,
                                            phase_rad, physics);
    PermittivityRow row;
    row.epsilon_r = epsilon;
    row.delta_v_mev = gate.delta_v_mev;
    row.pure_wait_ps = std::abs(phase_rad) * kHbarMeVPs /
                       std::abs(gate.delta_v_mev);
    row.total_duration_ps = gate.duration_ps;
    row.max_sequential_gates = gate.max_sequential_gates;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace quditsim
