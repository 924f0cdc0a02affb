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

#ifndef DARKGATE_INTERACTIONS_HPP
#define DARKGATE_INTERACTIONS_HPP

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "darkgate/quantum_core.hpp"
#include "darkgate/units.hpp"

namespace darkgate {

// Which atoms a pair channel acts on: one single and one multi atom, or two
// multi atoms.
enum class ChannelKind { kSingleMulti, kMultiMulti };

// A near-resonant pair channel |source> <-> |destination>, coupling C3/r^3,
// destination pair detuned by delta. Levels named "r", "a", "b" refer to the
// gate basis; any other name is an extra Rydberg level.
struct LeakageChannel {
  int id = 0;
  ChannelKind kind = ChannelKind::kSingleMulti;
  std::array<std::string, 2> source;
  std::array<std::string, 2> destination;
  double c3 = 0.0;         // 2pi GHz um^3
  double delta_mhz = 0.0;  // 2pi MHz
  bool resonant() const { return delta_mhz == 0.0; }
  bool operator==(const LeakageChannel &) const = default;
};

struct RydbergScheme {
  std::string name;
  std::string r_s, r_m, a_s, b_m;  // state labels
  int n_single = 0;
  int n_multi = 0;
  double c3_b1 = 0.0;  // 2pi GHz um^3
  double c3_b2 = 0.0;  // 2pi GHz um^3
  double c6_mm = 0.0;  // 2pi GHz um^6
  double e_field = 0.0;  // V/m
  std::vector<LeakageChannel> leakage_channels;

  // Nearest-level spacing of the single / multi species Rydberg state (rad/s).
  double delta_single() const;
  double delta_multi() const;
  // Spacing seen by the control / target species of a gate.
  double delta_control(GateKind kind) const;
  double delta_target(GateKind kind) const;
  bool operator==(const RydbergScheme &) const = default;
};

// Coupling C3/r^3 in rad/s for C3 in 2pi GHz um^3 and r in um.
double dipolar_coupling(double c3, double r_um);
// Coupling C6/r^6 in rad/s for C6 in 2pi GHz um^6 and r in um.
double vdw_coupling(double c6, double r_um);
// Cube root of |C3/delta| in um; delta in 2pi MHz. Throws ConfigError for a
// resonant channel (delta = 0).
double critical_distance(double c3, double delta_mhz);
// Largest critical distance among the scheme's non-resonant channels.
double scheme_critical_distance(const RydbergScheme &scheme);
// Ry/n^3 in rad/s.
double level_spacing(int n);

// Compiled-in copy of the shipped scheme table.
const std::vector<RydbergScheme> &builtin_schemes();
const RydbergScheme &find_scheme(std::string_view name);
std::vector<RydbergScheme> schemes_from_json(const nlohmann::json &doc);
nlohmann::json schemes_to_json(const std::vector<RydbergScheme> &schemes);
std::vector<RydbergScheme> load_schemes(const std::string &path);

enum class Geometry { kSquare, kLinear, kStar };
Geometry parse_geometry(std::string_view name);
const char *to_string(Geometry g);

struct LatticeConfig {
  Geometry geometry = Geometry::kSquare;
  double lattice_constant = 8.0;  // um
  std::vector<std::array<double, 2>> positions;  // atom 0 is the single qubit
  std::string placement_rule;
  double distance(std::size_t i, std::size_t j) const;
};

// Square: single qubit at the origin, multi qubits on the lattice sites
// nearest to it (ties by counterclockwise angle from +x), so k <= 4 keeps
// every single-multi pair at r. Linear: single qubit at the origin, multi
// qubits at -r, +r, -2r, +2r, ... Star: multi qubits evenly on a circle of
// radius r (k <= 6 so that every pair stays at least r apart).
LatticeConfig place_atoms(int k, Geometry geometry, double lattice_constant);

// Physical description of one gate instance.
struct SystemConfig {
  GateKind kind = GateKind::kToffoli;
  int k = 2;
  RydbergScheme scheme = builtin_schemes()[1];
  Geometry geometry = Geometry::kSquare;
  double lattice_constant = 8.0;  // um
  // Peak target Rabi frequency (rad/s). When zero, omega_t_over_b1 times the
  // nearest-neighbour |B1| is used.
  double omega_t = 0.0;
  double omega_t_over_b1 = 0.42;
  double omega_c = mhz(16.0);
  double decay_rate = 1e3;  // 1/s
};

double resolve_omega_t(const SystemConfig &config);

}  // namespace darkgate

#endif  // DARKGATE_INTERACTIONS_HPP
