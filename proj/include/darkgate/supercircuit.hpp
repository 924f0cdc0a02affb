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

#ifndef DARKGATE_SUPERCIRCUIT_HPP
#define DARKGATE_SUPERCIRCUIT_HPP

#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "darkgate/analytics.hpp"
#include "darkgate/integrator.hpp"
#include "darkgate/pulse.hpp"
#include "darkgate/quantum_core.hpp"

namespace darkgate {

// Star circuit: node 0 is the lone unit (Toffoli target, fan-out control),
// nodes 1..k the multi units, each joined to node 0 by a capacitor C_x.
// Capacitances in pF, Josephson energies in ns^-1; numbers are used as given.
struct CircuitSpec {
  GateKind kind = GateKind::kToffoli;
  int k = 2;
  double c0 = 0.0;
  double ci = 0.0;
  double cx = 0.0;
  double e0 = 0.0;
  double ei = 0.0;

  void validate() const;
};

// Example circuit rows 1..3 for k = 2.
CircuitSpec table_circuit(GateKind kind, int row);

struct QuantizedCircuit {
  CircuitSpec spec;
  Eigen::MatrixXd capacitance;
  Eigen::MatrixXd inverse;      // inverse capacitance matrix
  double inverse_defect = 0.0;  // max |C C^-1 - I|
  Eigen::VectorXd impedance;    // Z_i = sqrt(inv_ii / E_i)
  Eigen::MatrixXd levels;       // omega_n for n = 0..3, one row per node
  Eigen::VectorXd anharmonicity;
  std::size_t target_node = 0;
  std::size_t control_node = 1;
  // Pair detunings (omega of upper pair minus lower pair) between the
  // target and control nodes.
  double delta_3t1c_2t2c = 0.0;  // degeneracy condition, tuned to zero
  double delta_1t1c_2t0c = 0.0;
  double delta_1t0c_0t1c = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;

  nlohmann::json to_json() const;
};

// Throws ConfigError when C is singular or not positive definite.
QuantizedCircuit quantize(const CircuitSpec &spec);

// C_0 making |3_t 1_c> and |2_t 2_c> degenerate; the root nearest spec.c0
// (in log scale) is returned. Throws ConfigError when none is bracketed
// within [1e-3, 1e3] x spec.c0.
double tune_degeneracy(const CircuitSpec &spec);

struct SCGateParams {
  GateKind kind = GateKind::kToffoli;
  int k = 2;
  double b1 = 0.0;       // rad/s
  double b2 = 0.0;       // rad/s
  double omega_c = 0.0;  // rad/s
  double omega_t = 0.0;  // rad/s
  double gamma = 0.0;    // 1/s
  double delta_1t1c_2t0c = 0.0;  // rad/s
  double delta_1t0c_0t1c = 0.0;  // rad/s
  double alpha_t = 0.0;  // rad/s
  double alpha_c = 0.0;  // rad/s

  void validate() const;
};

// Row 2 couplings with the drive, damping and detunings of the example
// superconducting gate.
SCGateParams sc_example_params(GateKind kind, int k);

// Dissipation, rotation, both exchange errors and the non-adiabatic loss.
ErrorBudget sc_error_budget(const SCGateParams &p);

struct SCModelOptions {
  bool include_b2 = true;
  // Multiply exchange couplings by the sqrt(n) factors of the ladder operators.
  bool fock_enhancement = false;
};

// Four Fock levels "0".."3" per node, node 0 first.
struct SCModel {
  GateKind kind = GateKind::kToffoli;
  int k = 0;
  BasisPtr basis;
  SparseMatrix exchange_b1;
  SparseMatrix exchange_b2;
  SparseMatrix drive;  // unit Rabi frequency on 1 <-> 2 of the driven units
  PulseSpec pulse;
};

SCModel sc_build_model(const SCGateParams &p, const SCModelOptions &options = {});
OperatorMatrix sc_build_hamiltonian(const SCGateParams &p, double omega, const SCModelOptions &options = {});

// Dark configuration: Toffoli |1_t 2_c^j 0_c^(k-j)>, fan-out |2_c 1_t^j 0_t^(k-j)>.
StateVector sc_dark_initial_state(const SCModel &model, int j);

struct SCTrackResult {
  Trajectory trajectory;
  std::vector<double> infidelity;  // against the null vector of the B2-free Hamiltonian
  double final_bright_population = 0.0;
  // Mixing angle at T/2 read from the population left in the initial state,
  // and tan^-1(Omega(T/2) / (2 sqrt(j) B1)).
  double theta_mid = 0.0;
  double theta_mid_closed_form = 0.0;
};

SCTrackResult sc_evolve_and_track(const SCGateParams &p, int j, const SCModelOptions &options = {},
                                  double tol = 1e-10, int nodes = 257);

}  // namespace darkgate

#endif  // DARKGATE_SUPERCIRCUIT_HPP
