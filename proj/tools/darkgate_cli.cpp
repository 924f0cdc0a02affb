// Copyright 2026 The darkgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "darkgate/config.hpp"
#include "darkgate/errors.hpp"
#include "darkgate/experiments.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Common {
  std::string config;
  std::string out;
  double tol = 0.0;
  int threads = 0;
  std::vector<std::string> set;
};

void add_common(CLI::App *cmd, Common &c) {
  cmd->add_option("--config,-c", c.config, "YAML experiment file");
  cmd->add_option("--out,-o", c.out, "Output file (default: stdout)");
  cmd->add_option("--tol", c.tol, "Integrator tolerance");
  cmd->add_option("--threads,-j", c.threads, "Worker threads");
  cmd->add_option("--set", c.set, "Override a config key, e.g. --set k=4 or --set optimizer.r_min_um=9");
}

int run(const std::string &command, const Common &c) {
  std::vector<std::string> overrides = c.set;
  if (c.tol > 0.0) overrides.push_back(fmt::format("tol={:.17g}", c.tol));
  if (c.threads > 0) overrides.push_back(fmt::format("threads={}", c.threads));
  darkgate::ExperimentConfig cfg = c.config.empty() ? darkgate::parse_config("{}", overrides, ".", command)
                                                    : darkgate::load_config(c.config, overrides, command);
  std::string out_path = c.out.empty() ? cfg.out : c.out;
  // Compute first, so a failed run leaves no partial file behind.
  std::ostringstream buffer;
  darkgate::run_experiment(cfg, buffer);
  if (out_path.empty() || out_path == "-") {
    std::cout << buffer.str();
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw darkgate::ConfigError("cannot write output file '" + out_path + "'");
    f << buffer.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Dark-state multi-qubit gate simulator and error budgets"};
  app.require_subcommand(1);
  Common common;
  std::string command;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"budget-vs-k", "Optimized error budget against the number of multi qubits"},
      {"budget-vs-r", "Optimized error budget at fixed lattice constants"},
      {"darkstate-trace", "Dark-state infidelity during the target pulse"},
      {"nonadiabatic-scan", "Simulated non-adiabatic loss against the closed forms"},
      {"leakage-scan", "Leakage and phase from non-resonant pair channels"},
      {"gate-fidelity", "Full gate simulation against the lattice-averaged budget"},
      {"optimize", "Optimal drive and lattice constant for one k"},
      {"circuit-report", "Superconducting circuit quantization report"},
      {"sc-budget", "Superconducting gate error budget against k"},
  };
  for (const auto &[name, help] : commands) {
    CLI::App *sub = app.add_subcommand(name, help);
    add_common(sub, common);
    sub->callback([&command, name = name] { command = name; });
  }
  CLI::App *run_sub = app.add_subcommand("run", "Run the command named in the config file");
  add_common(run_sub, common);
  run_sub->callback([&command] { command = ""; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  try {
    if (command.empty() && common.config.empty()) throw darkgate::ConfigError("'run' needs --config");
    return run(command, common);
  } catch (const darkgate::ConfigError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const darkgate::NumericalError &e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
