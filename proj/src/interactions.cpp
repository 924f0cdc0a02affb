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

#include "darkgate/interactions.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include "darkgate/errors.hpp"

namespace darkgate {

double RydbergScheme::delta_single() const { return level_spacing(n_single); }
double RydbergScheme::delta_multi() const { return level_spacing(n_multi); }

double RydbergScheme::delta_control(GateKind kind) const {
  return kind == GateKind::kToffoli ? delta_multi() : delta_single();
}

double RydbergScheme::delta_target(GateKind kind) const {
  return kind == GateKind::kToffoli ? delta_single() : delta_multi();
}

double dipolar_coupling(double c3, double r_um) {
  if (!(r_um > 0.0)) throw ConfigError("interatomic distance must be positive");
  return ghz(c3) / (r_um * r_um * r_um);
}

double vdw_coupling(double c6, double r_um) {
  if (!(r_um > 0.0)) throw ConfigError("interatomic distance must be positive");
  double r3 = r_um * r_um * r_um;
  return ghz(c6) / (r3 * r3);
}

double critical_distance(double c3, double delta_mhz) {
  if (delta_mhz == 0.0) throw ConfigError("resonant channel, no critical distance");
  return std::cbrt(std::abs(c3 * 1e3 / delta_mhz));
}

double scheme_critical_distance(const RydbergScheme &scheme) {
  double best = -1.0;
  for (const auto &ch : scheme.leakage_channels) {
    if (!ch.resonant()) best = std::max(best, critical_distance(ch.c3, ch.delta_mhz));
  }
  if (best < 0.0) throw ConfigError("scheme '" + scheme.name + "' has no non-resonant leakage channels");
  return best;
}

double level_spacing(int n) {
  if (n < 2) throw ConfigError("principal quantum number must be at least 2");
  double n3 = static_cast<double>(n) * n * n;
  return kTwoPi * kRydbergHz / n3;
}

namespace {

LeakageChannel channel(int id, ChannelKind kind, std::array<std::string, 2> src, std::array<std::string, 2> dst,
                       double c3, double delta) {
  return LeakageChannel{id, kind, std::move(src), std::move(dst), c3, delta};
}

std::vector<RydbergScheme> make_builtin() {
  using enum ChannelKind;
  std::vector<RydbergScheme> out;
  out.push_back({"87S-95S", "95S1/2 1/2", "87S1/2 1/2", "95P3/2 3/2", "87P3/2 3/2", 95, 87, -5.6, -1.56, -5.0, 31.8,
                 {}});
  out.push_back({"101S-109S",
                 "109S1/2 1/2",
                 "101S1/2 1/2",
                 "109P3/2 3/2",
                 "101P3/2 3/2",
                 109,
                 101,
                 -10.2,
                 -2.87,
                 -27.9,
                 15.2,
                 {
                     channel(1, kSingleMulti, {"r", "r"}, {"a", "b"}, -10.2, 0.0),
                     channel(2, kMultiMulti, {"r", "b"}, {"b", "r"}, -2.9, 0.0),
                     channel(3, kSingleMulti, {"r", "r"}, {"109P1/2 -1/2", "101P3/2 -1/2"}, 5.0, 9.5),
                     channel(4, kMultiMulti, {"r", "r"}, {"b", "b"}, -8.6, 382.0),
                     channel(5, kSingleMulti, {"a", "b"}, {"108D5/2 5/2", "99D5/2 5/2"}, -6.5, 52.0),
                     channel(6, kSingleMulti, {"a", "r"}, {"108D5/2 5/2", "100P3/2 3/2"}, -14.0, -207.0),
                     channel(7, kMultiMulti, {"r", "b"}, {"100P1/2 -1/2", "100D5/2 1/2"}, 3.0, 3.0),
                 }});
  out.push_back({"150S-160S", "160S1/2 1/2", "150S1/2 1/2", "160P3/2 3/2", "150P3/2 3/2", 160, 150, -49.0, -14.3,
                 -4300.0, 2.0, {}});
  return out;
}

const char *kind_name(ChannelKind k) { return k == ChannelKind::kSingleMulti ? "single-multi" : "multi-multi"; }

ChannelKind parse_kind(const std::string &s) {
  if (s == "single-multi") return ChannelKind::kSingleMulti;
  if (s == "multi-multi") return ChannelKind::kMultiMulti;
  throw ConfigError("unknown channel kind '" + s + "'");
}

template <typename T>
T require(const nlohmann::json &j, const char *key) {
  if (!j.contains(key)) throw ConfigError(std::string("scheme record is missing '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception &e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

const std::vector<RydbergScheme> &builtin_schemes() {
  static const std::vector<RydbergScheme> table = make_builtin();
  return table;
}

const RydbergScheme &find_scheme(std::string_view name) {
  for (const auto &s : builtin_schemes()) {
    if (s.name == name) return s;
  }
  throw ConfigError("unknown Rydberg scheme '" + std::string(name) + "'");
}

inline constexpr const char *kSchemesSchema = "darkgate.schemes/1";

std::vector<RydbergScheme> schemes_from_json(const nlohmann::json &doc) {
  if (!doc.is_object() || doc.value("schema", "") != kSchemesSchema) {
    throw ConfigError(std::string("scheme file must declare schema '") + kSchemesSchema + "'");
  }
  std::vector<RydbergScheme> out;
  for (const auto &j : doc.at("schemes")) {
    RydbergScheme s;
    s.name = require<std::string>(j, "name");
    s.r_s = require<std::string>(j, "r_s");
    s.r_m = require<std::string>(j, "r_m");
    s.a_s = require<std::string>(j, "a_s");
    s.b_m = require<std::string>(j, "b_m");
    s.n_single = require<int>(j, "n_single");
    s.n_multi = require<int>(j, "n_multi");
    s.c3_b1 = require<double>(j, "C3_B1");
    s.c3_b2 = require<double>(j, "C3_B2");
    s.c6_mm = require<double>(j, "C6_mm");
    s.e_field = require<double>(j, "E_field");
    if (j.contains("leakage_channels")) {
      for (const auto &c : j.at("leakage_channels")) {
        LeakageChannel ch;
        ch.id = require<int>(c, "id");
        ch.kind = parse_kind(require<std::string>(c, "kind"));
        ch.source = require<std::array<std::string, 2>>(c, "source");
        ch.destination = require<std::array<std::string, 2>>(c, "destination");
        ch.c3 = require<double>(c, "C3");
        ch.delta_mhz = require<double>(c, "delta_MHz");
        s.leakage_channels.push_back(std::move(ch));
      }
    }
    for (double v : {s.c3_b1, s.c3_b2, s.c6_mm, s.e_field}) {
      if (!std::isfinite(v)) throw ConfigError("scheme '" + s.name + "' has a non-finite coefficient");
    }
    if (s.n_single < 2 || s.n_multi < 2) throw ConfigError("scheme '" + s.name + "' has invalid principal numbers");
    out.push_back(std::move(s));
  }
  return out;
}

nlohmann::json schemes_to_json(const std::vector<RydbergScheme> &schemes) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto &s : schemes) {
    nlohmann::json channels = nlohmann::json::array();
    for (const auto &c : s.leakage_channels) {
      channels.push_back({{"id", c.id},
                          {"kind", kind_name(c.kind)},
                          {"source", c.source},
                          {"destination", c.destination},
                          {"C3", c.c3},
                          {"delta_MHz", c.delta_mhz}});
    }
    arr.push_back({{"name", s.name},
                   {"r_s", s.r_s},
                   {"r_m", s.r_m},
                   {"a_s", s.a_s},
                   {"b_m", s.b_m},
                   {"n_single", s.n_single},
                   {"n_multi", s.n_multi},
                   {"C3_B1", s.c3_b1},
                   {"C3_B2", s.c3_b2},
                   {"C6_mm", s.c6_mm},
                   {"E_field", s.e_field},
                   {"leakage_channels", channels}});
  }
  return {{"schema", kSchemesSchema},
          {"units", {{"C3", "2pi GHz um^3"}, {"C6", "2pi GHz um^6"}, {"E_field", "V/m"}, {"delta", "2pi MHz"}}},
          {"schemes", arr}};
}

std::vector<RydbergScheme> load_schemes(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scheme file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception &e) {
    throw ConfigError("scheme file '" + path + "' is not valid JSON: " + e.what());
  }
  return schemes_from_json(doc);
}

Geometry parse_geometry(std::string_view name) {
  if (name == "square") return Geometry::kSquare;
  if (name == "linear") return Geometry::kLinear;
  if (name == "star") return Geometry::kStar;
  throw ConfigError("unknown lattice geometry '" + std::string(name) + "' (expected square, linear or star)");
}

const char *to_string(Geometry g) {
  switch (g) {
    case Geometry::kSquare:
      return "square";
    case Geometry::kLinear:
      return "linear";
    case Geometry::kStar:
      return "star";
  }
  return "unknown";
}

double LatticeConfig::distance(std::size_t i, std::size_t j) const {
  return std::hypot(positions[i][0] - positions[j][0], positions[i][1] - positions[j][1]);
}

LatticeConfig place_atoms(int k, Geometry geometry, double lattice_constant) {
  if (k < 1) throw ConfigError("qubit count k must be at least 1");
  if (!(lattice_constant > 0.0)) throw ConfigError("lattice constant must be positive");
  LatticeConfig out;
  out.geometry = geometry;
  out.lattice_constant = lattice_constant;
  if (geometry == Geometry::kLinear) {
    out.placement_rule = "linear-centered";
    out.positions.push_back({0.0, 0.0});
    for (int i = 1; i <= k; ++i) {
      int shell = (i + 1) / 2;
      double sign = (i % 2 == 1) ? -1.0 : 1.0;
      out.positions.push_back({sign * shell * lattice_constant, 0.0});
    }
    return out;
  }
  if (geometry == Geometry::kStar) {
    if (k > 6) throw ConfigError("star geometry keeps pairwise distances >= r only for k <= 6");
    out.placement_rule = "star-uniform";
    out.positions.push_back({0.0, 0.0});
    for (int i = 0; i < k; ++i) {
      double phi = 2.0 * std::numbers::pi * i / k;
      out.positions.push_back({lattice_constant * std::cos(phi), lattice_constant * std::sin(phi)});
    }
    return out;
  }
  // Sites in order of distance from the single qubit, then counterclockwise
  // angle from +x.
  out.placement_rule = "square-nearest-first";
  const int reach = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(k)))) + 1;
  struct Site {
    int x, y;
    int norm2;
    double angle;
  };
  std::vector<Site> sites;
  for (int x = -reach; x <= reach; ++x) {
    for (int y = -reach; y <= reach; ++y) {
      if (x == 0 && y == 0) continue;
      double angle = std::atan2(static_cast<double>(y), static_cast<double>(x));
      if (angle < 0.0) angle += 2.0 * std::numbers::pi;
      sites.push_back({x, y, x * x + y * y, angle});
    }
  }
  std::sort(sites.begin(), sites.end(), [](const Site &l, const Site &r) {
    return l.norm2 != r.norm2 ? l.norm2 < r.norm2 : l.angle < r.angle;
  });
  out.positions.push_back({0.0, 0.0});
  for (int i = 0; i < k; ++i) {
    out.positions.push_back({sites[static_cast<std::size_t>(i)].x * lattice_constant,
                             sites[static_cast<std::size_t>(i)].y * lattice_constant});
  }
  return out;
}

double resolve_omega_t(const SystemConfig &config) {
  if (config.omega_t > 0.0) return config.omega_t;
  double b1 = std::abs(dipolar_coupling(config.scheme.c3_b1, config.lattice_constant));
  return config.omega_t_over_b1 * b1;
}

}  // namespace darkgate
