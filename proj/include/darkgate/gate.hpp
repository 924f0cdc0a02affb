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

#ifndef DARKGATE_GATE_HPP
#define DARKGATE_GATE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include <nlohmann/json.hpp>

#include "darkgate/hamiltonian.hpp"
#include "darkgate/integrator.hpp"

namespace darkgate {

enum class ControlMode { kIdeal, kSquare };

struct ProtocolOptions {
  ControlMode control = ControlMode::kSquare;
  double tol = 1e-9;
  int threads = 1;
};

// Ideal control pi map: g0 -> -i r, r -> -i g0 on every control atom; the
// inverse map on return, so the pair multiplies to the identity.
StateVector apply_ideal_pi(const GateModel &model, const StateVector &psi, bool inverse);

// Control pi pulse, Gaussian 2 pi target pulse, control pi pulse with the
// opposite phase.
StateVector run_protocol(const GateModel &model, const StateVector &psi0, const ProtocolOptions &options);

// Flat index of the qubit product state; atom 0 is the most significant bit.
std::size_t computational_index(const ProductBasis &basis, std::uint64_t bits);

struct GateUnitary {
  GateKind kind = GateKind::kToffoli;
  int k = 0;
  DenseMatrix matrix;                 // 2^(k+1) square, qubit subspace
  std::vector<double> column_leakage; // 1 - column norm^2 of the phase stage
  std::vector<bool> column_flagged;
  double unitarity_defect = 0.0;      // max |U^dag U - I|
  nlohmann::json to_json() const;
};

DenseMatrix ideal_phase_gate(GateKind kind, int k);
// Hadamards on the driven species (Toffoli: single target; fan-out: all targets).
DenseMatrix driven_hadamards(GateKind kind, int k);
DenseMatrix ideal_gate(GateKind kind, int k);
// Fixes the |0...0> element real and positive.
DenseMatrix fix_global_phase(const DenseMatrix &u);

// Full gate: Hadamards, protocol on each qubit input, Hadamards. Columns run
// in parallel with deterministic assembly.
GateUnitary gate_unitary(const GateModel &model, const ProtocolOptions &options, double leakage_threshold = 1e-2,
                         int max_k = 4);
GateUnitary gate_unitary(const SystemConfig &config, const LatticeConfig &lattice, const ModelOptions &model_options,
                         const ProtocolOptions &options, double leakage_threshold = 1e-2, int max_k = 4);

// [Tr(M M^dag) + |Tr M|^2] / [n (n + 1)], M = U_ideal^dag U_gate.
double average_gate_fidelity(const DenseMatrix &u_gate, const DenseMatrix &u_ideal);

// Dark-state tracking ---------------------------------------------------------

// Initial dark configuration with j excited (Toffoli: controls 1..j in r,
// target g1) or driven (fan-out: control in r, targets 1..j in g1) atoms;
// remaining multi atoms idle in their undriven qubit level.
StateVector dark_initial_state(const GateModel &model, int j);

// Closed-form Toffoli dark state for arbitrary B1_i:
// tan theta = Omega(t) / (2 sqrt(sum B1_i^2)).
std::function<StateVector(double)> toffoli_analytic_dark_state(const GateModel &model, int j);

// Fan-out ladder state embedded in the product basis from ladder amplitudes
// (index m as in DarkStateFanout).
StateVector embed_fanout_ladder(const GateModel &model, int j, const std::vector<double> &amplitudes);

// Null vector of the bare dark Hamiltonian continuously connected to the
// initial state, obtained by projecting the previous dark state onto the
// null space at each requested time (times must be visited in order).
// The tracked Hamiltonian is exchange + Omega(t) drive. When the drive lifts
// every null vector (unequal couplings), the eigenvector with the largest
// overlap is followed, together with levels closer to it than the pulse can
// resolve, and quasi_dark_steps() counts those times.
class NullSpaceTracker {
 public:
  NullSpaceTracker(BasisPtr basis, SparseMatrix exchange, SparseMatrix drive, PulseSpec pulse,
                   const StateVector &initial);
  NullSpaceTracker(const GateModel &model, const StateVector &initial);
  StateVector operator()(double t);
  int quasi_dark_steps() const { return quasi_dark_steps_; }

 private:
  BasisPtr basis_;
  SparseMatrix exchange_;
  SparseMatrix drive_;
  PulseSpec pulse_;
  std::vector<std::size_t> subspace_;
  Eigen::VectorXcd previous_;
  int quasi_dark_steps_ = 0;
};

std::vector<double> dark_state_infidelity(const Trajectory &traj, const std::function<StateVector(double)> &dark);

struct DarkStateRun {
  Trajectory trajectory;
  std::vector<double> infidelity;
  // 1 - |<psi0|psi(T)>|^2 / ||psi(T)||^2 at the end of the pulse.
  double final_bright_population = 0.0;
};

// Evolves the initial dark configuration through the target pulse only.
DarkStateRun track_dark_state(const GateModel &model, int j, double tol, int nodes = 512);

// Uniform couplings (star lattice, k = j), drive + B1 only, ideal control maps.
double simulate_bright_population(GateKind kind, int j, double omega_t_over_b1, const RydbergScheme &scheme,
                                  double r, double tol);

// Leakage -----------------------------------------------------------------------

struct LeakagePoint {
  double r = 0.0;         // um
  double phase = 0.0;     // rad, arg of returned amplitude relative to the resonant-only model
  double leaked = 0.0;    // population outside the resonant-only reachable subspace
  double envelope = 0.0;  // adiabatic loss level without pi
};

// k = 2 on a linear chain with the single qubit in the middle. Runs the full
// protocol with square control pulses for all channels and for the
// resonant-only model on the same basis.
std::vector<LeakagePoint> leakage_scan(const SystemConfig &base, const std::vector<double> &radii,
                                       const ProtocolOptions &options);

// Runs f(i) for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)> &f);

}  // namespace darkgate

#endif  // DARKGATE_GATE_HPP
