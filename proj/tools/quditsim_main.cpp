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

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "quditsim/commands.hpp"
#include "quditsim/constants.hpp"
#include "quditsim/errors.hpp"
#include "quditsim/io.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;
};

void add_common_flags(CLI::App* app, CommonFlags& flags) {
  app->add_option("--config", flags.config_path, "Scenario config JSON path")
      ->required();
  app->add_option("--out", flags.out_dir, "Output directory override");
  app->add_option("--seed", flags.seed, "Seed override")
      ->each([&flags](const std::string&) { flags.seed_set = true; });
  app->add_option("--threads", flags.threads,
                  "Worker threads for scans (default from config)");
}

int run(const std::string& subcommand, const CommonFlags& flags) {
  using namespace quditsim;
  ScenarioConfig config =
      parse_scenario(read_text_file(flags.config_path), subcommand);
  if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
  if (flags.seed_set) config.seed = flags.seed;
  if (flags.threads > 0) config.threads = flags.threads;

  CommandResult result;
  if (subcommand == "dim-scan") {
    result = cmd_dim_scan(config);
  } else if (subcommand == "gate") {
    result = cmd_gate(config);
  } else if (subcommand == "simulate") {
    result = cmd_simulate(config);
  } else if (subcommand == "optimize") {
    result = cmd_optimize(config);
  } else {
    result = cmd_layout(config);
  }
  std::cout << result.summary << '\n';
  for (const std::string& file : result.files) {
    std::cout << "wrote " << config.out_dir << '/' << file << '\n';
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"charge-qudit register simulator and gate compiler"};
  app.set_version_flag("--version", std::string(quditsim::kToolVersion));
  app.require_subcommand(1);

  CommonFlags flags;
  const char* names[] = {"dim-scan", "gate", "simulate", "optimize", "layout"};
  const char* descriptions[] = {
      "Hilbert-space dimension scan across architectures",
      "Compile and simulate a gate protocol",
      "Replay an explicit schedule on an initial state",
      "Derivative-free pulse optimization benchmarks",
      "Emit register geometry and electrode map",
  };
  for (int i = 0; i < 5; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], descriptions[i]);
    add_common_flags(sub, flags);
  }

  CLI11_PARSE(app, argc, argv);

  const std::string subcommand = app.get_subcommands().front()->get_name();
  try {
    return run(subcommand, flags);
  } catch (const quditsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return quditsim::kExitConfigError;
  } catch (const quditsim::CompileError& e) {
    std::cerr << "compile error: " << e.what() << '\n';
    return quditsim::kExitCompileError;
  } catch (const quditsim::ModelError& e) {
    std::cerr << "model error: " << e.what() << '\n';
    return quditsim::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
