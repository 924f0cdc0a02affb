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

#ifndef DARKGATE_HAMILTONIAN_HPP
#define DARKGATE_HAMILTONIAN_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "darkgate/interactions.hpp"
#include "darkgate/pulse.hpp"
#include "darkgate/quantum_core.hpp"

namespace darkgate {

struct ModelOptions {
  bool spectators = true;   // one detuned Rydberg level per atom
  bool include_b1 = true;   // single-multi exchange
  bool include_b2 = true;   // multi-multi exchange
  bool include_vdw = false; // C6 shift between multi atoms in r
  bool leakage = false;     // non-resonant pair channels and extra levels
  std::vector<int> channels;      // channel ids used when leakage is set; empty = all
  double leakage_c3_scale = 1.0;  // scales the non-resonant channel couplings
  std::size_t dimension_cap = kDefaultDimensionCap;
};

// Time-independent pieces of the rotating-frame Hamiltonian. The full
// Hamiltonian of a protocol stage is static + a(t) target_drive + c(t) control_drive,
// the drive matrices being normalized to unit Rabi frequency.
struct GateModel {
  GateKind kind = GateKind::kToffoli;
  int k = 0;
  BasisPtr basis;
  SparseMatrix static_part;
  SparseMatrix target_drive;
  SparseMatrix control_drive;
  SparseMatrix target_drive_bare;  // g1 <-> r only, no spectator
  std::vector<std::size_t> target_atoms;
  std::vector<std::size_t> control_atoms;
  double omega_t = 0.0;
  double omega_c = 0.0;
  PulseSpec pulse;
  std::vector<double> b1_couplings;  // single <-> multi i, rad/s, signed
  // Per-atom extra-level energies (rad/s) when leakage is enabled, keyed by
  // (role, label), and the least-squares residual of the channel constraints.
  std::map<std::pair<Role, std::string>, double> level_energies;
  double energy_residual = 0.0;

  // H(t) during the target pulse, t in [0, pulse.duration].
  OperatorMatrix hamiltonian(double t) const;
  // Bare drive + B1 part of H(t): the Hamiltonian whose null vector is the dark state.
  SparseMatrix dark_hamiltonian(double t) const;
  SparseMatrix exchange_b1;  // B1 part of static_part
};

// Basis of the leakage study: single atom with its driven qubit level, r, a
// and the extra single levels named by the channels; multi atoms with
// g0, g1, r, b and their extra levels.
BasisPtr build_leakage_basis(GateKind kind, int k, const RydbergScheme &scheme, const ModelOptions &options);

// Per-atom energies solving E(dst0) + E(dst1) - E(src0) - E(src1) = delta for
// every selected channel in the minimum-norm least-squares sense.
std::map<std::pair<Role, std::string>, double> solve_level_energies(const RydbergScheme &scheme,
                                                                    const std::vector<int> &channels,
                                                                    double *residual = nullptr);

// Assemble the model on `basis` (levels missing from the basis are skipped).
GateModel build_gate_model(const SystemConfig &config, const LatticeConfig &lattice, const ModelOptions &options,
                           BasisPtr basis);
// Convenience: basis from build_basis (or build_leakage_basis when options.leakage).
GateModel build_gate_model(const SystemConfig &config, const LatticeConfig &lattice, const ModelOptions &options = {});

// H(t) during the target pulse: drive on g1 <-> r of the driven species plus
// exchange terms. Defaults: no spectators, B2 on, van der Waals off.
OperatorMatrix build_hamiltonian(GateKind kind, const SystemConfig &config, const LatticeConfig &lattice, double t,
                                 ModelOptions options = {.spectators = false});
OperatorMatrix build_leakage_hamiltonian(const SystemConfig &config, const LatticeConfig &lattice, double t,
                                         ModelOptions options = {.spectators = false, .leakage = true});

// Star geometry: uniform single-multi couplings, k <= 6.
LatticeConfig star_lattice(int k, double r);

}  // namespace darkgate

#endif  // DARKGATE_HAMILTONIAN_HPP
