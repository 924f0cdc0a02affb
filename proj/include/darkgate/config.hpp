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

#ifndef DARKGATE_CONFIG_HPP
#define DARKGATE_CONFIG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "darkgate/analytics.hpp"
#include "darkgate/gate.hpp"
#include "darkgate/hamiltonian.hpp"
#include "darkgate/supercircuit.hpp"

namespace darkgate {

// Fully validated experiment description. Frequencies are stored in rad/s,
// distances in um, rates in 1/s.
struct ExperimentConfig {
  std::string command;
  std::vector<GateKind> gates;
  RydbergScheme scheme;
  std::string schemes_file;  // empty: compiled-in table

  std::vector<int> k;                     // k, or excited counts j for traces and scans
  std::vector<double> r;                  // um
  std::vector<double> omega_t_over_b1;
  double omega_c = mhz(16.0);
  std::vector<double> decay_rates{1e3};   // 1/s
  std::vector<BudgetVariant> variants{BudgetVariant::kDark};
  std::map<GateKind, OptimizationBounds> bounds;
  // Also evaluate the square-lattice budget at each optimum.
  bool lattice_estimate = false;
  Geometry geometry = Geometry::kSquare;
  ModelOptions model;
  ControlMode control = ControlMode::kSquare;
  int nodes = 257;

  // Circuit report.
  CircuitSpec circuit;
  int circuit_row = 0;  // 0 when the circuit is given explicitly
  std::vector<int> tune_k;
  // Superconducting budget, per gate kind.
  std::map<GateKind, SCGateParams> sc;

  double tol = 1e-9;
  int threads = 1;
  std::string out;

  // The resolved settings of this command, embedded in every output.
  nlohmann::json resolved() const;
};

const std::vector<std::string> &command_names();

// Parses YAML text; overrides are "dotted.key=value" with value in YAML
// syntax, applied before validation. A non-empty `command` fills in a missing
// command key and must agree with a present one. Relative file names resolve
// against base_dir. Throws ConfigError.
ExperimentConfig parse_config(const std::string &yaml_text, const std::vector<std::string> &overrides = {},
                              const std::string &base_dir = ".", const std::string &command = "");
ExperimentConfig load_config(const std::string &path, const std::vector<std::string> &overrides = {},
                             const std::string &command = "");

}  // namespace darkgate

#endif  // DARKGATE_CONFIG_HPP
