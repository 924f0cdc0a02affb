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

#ifndef DARKGATE_ANALYTICS_HPP
#define DARKGATE_ANALYTICS_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "darkgate/interactions.hpp"

namespace darkgate {

// Dark state of the Toffoli target pulse with j excited controls:
// cos(theta)|r^j 1_t> - sin(theta)|B>, |B> the symmetric transferred state.
struct DarkStateToffoli {
  int j = 0;
  double theta = 0.0;
  std::array<double, 2> amplitudes{1.0, 0.0};
};

// Fan-out dark state over the ladder m = 0..j (m excited targets). Even m is
// |r_c r^m 1^(j-m)>, odd m is |a_c b r^(m-1) 1^(j-m)>, both symmetrized.
struct DarkStateFanout {
  int j = 0;
  double x = 0.0;                        // Omega_t / (2 B1)
  std::vector<double> tan_theta;         // index m, tan_theta[0] = 1
  std::vector<double> cumulative_tan;    // tan(theta_{m!}), [0] = 1
  std::vector<double> probabilities;     // P_m = cumulative_tan^2
  std::vector<double> amplitudes;        // signed, unit norm
};

DarkStateToffoli toffoli_dark_state(double omega_t, double b1, int j);
// Product-of-tangents ladder (weak-drive form).
DarkStateFanout fanout_dark_state(double omega_t, double b1, int j);
// Exact null vector of the symmetric fan-out chain on the same ladder
// support; tan_theta and cumulative_tan hold ratios of the exact amplitudes.
DarkStateFanout fanout_dark_state_exact(double omega_t, double b1, int j);

struct GateParams {
  GateKind kind = GateKind::kToffoli;
  int k = 2;
  double omega_t = 0.0;   // rad/s
  double omega_c = 0.0;   // rad/s
  double b1 = 0.0;        // rad/s, magnitude
  double b2 = 0.0;        // rad/s, magnitude
  double d = 0.0;         // same-species van der Waals shift, magnitude
  double delta_c = 0.0;   // rad/s
  double delta_t = 0.0;   // rad/s
  double decay_rate = 0.0;  // 1/s
  double r = 0.0;         // um, echo only
};

// Nearest-neighbour closed-form parameters of a configuration.
GateParams gate_params(const SystemConfig &config);
GateParams gate_params(GateKind kind, int k, const RydbergScheme &scheme, double r, double omega_t, double omega_c,
                       double decay_rate);

struct ErrorTerm {
  std::string name;
  double value = 0.0;
};

struct ErrorBudget {
  std::string variant;
  std::vector<ErrorTerm> terms;        // summed into total
  std::vector<ErrorTerm> diagnostics;  // reported, not summed
  std::vector<std::pair<std::string, double>> parameters;

  double total() const;
  // Throws ConfigError for unknown names; searches terms then diagnostics.
  double term(const std::string &name) const;
  bool has_term(const std::string &name) const;
  nlohmann::json to_json() const;
};

// 2^-n sum_j C(n, j) f(j) for j in [j_min, n].
template <typename F>
double binomial_average(int n, int j_min, F &&f) {
  double weight = 1.0;
  for (int i = 0; i < n; ++i) weight *= 0.5;
  double total = 0.0;
  double c = 1.0;
  for (int j = 0; j <= n; ++j) {
    if (j >= j_min) total += c * f(j);
    c = c * (n - j) / (j + 1);
  }
  return total * weight;
}

double exchange_perturbation(GateKind kind, double omega_t, double b1, double b2, int j);
ErrorBudget toffoli_error_budget(const GateParams &p);
ErrorBudget fanout_error_budget(const GateParams &p);
ErrorBudget dark_error_budget(const GateParams &p);
// Blockade baseline at the same parameters, control-target shift b_ct.
ErrorBudget blockade_error_budget(const GateParams &p, double b_ct);

enum class RotationDrive { kControl, kTarget };

// Configuration-resolved rotation errors on real positions, averaged over
// all 2^(k+1) classical inputs, plus the lattice-independent closed-form terms.
ErrorBudget lattice_error_budget(const SystemConfig &config, const LatticeConfig &lattice,
                                 RotationDrive toffoli_r1_drive = RotationDrive::kControl);

// Non-adiabatic loss with the pi of the pulse-shape derivation.
double nonadiabatic_estimate(GateKind kind, double omega_t, double b1, int j, bool envelope = false);

enum class BudgetVariant { kDark, kBlockade };

struct OptimizationBounds {
  double r_min = 8.0;      // um
  double r_max = 30.0;     // um
  double r_step = 0.05;    // um
  double omega_t_min = 0.0;  // rad/s; 0 selects the gate-kind default window
  double omega_t_max = 0.0;
  double omega_t_over_b1_max = 0.42;
  double omega_c_min = mhz(16.0);
  double omega_c_max = mhz(16.0);
  double decay_rate = 1e3;
  BudgetVariant variant = BudgetVariant::kDark;
};

// Default target Rabi window: Toffoli 2pi x [16 kHz, 8 MHz], fan-out 2pi x [1, 8] MHz.
OptimizationBounds default_bounds(GateKind kind);

struct OptimizationResult {
  GateParams params;
  ErrorBudget budget;
};

// Grid in r (absolute multiples of r_step inside the bounds, plus r_min);
// for each r the budget separates into convex functions of Omega_t and
// Omega_c, each minimized by Brent's method. Throws ConfigError when no r
// admits a feasible Omega_t.
OptimizationResult optimize_parameters(GateKind kind, int k, const RydbergScheme &scheme,
                                       const OptimizationBounds &bounds);

}  // namespace darkgate

#endif  // DARKGATE_ANALYTICS_HPP
