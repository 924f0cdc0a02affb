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

#include "darkgate/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "darkgate/errors.hpp"

namespace darkgate {

namespace {

// Reads keys from one mapping and rejects the ones nobody asked for.
class Section {
 public:
  Section(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path)) {
    if (node_ && !node_.IsNull() && !node_.IsMap()) throw ConfigError(where() + "must be a mapping");
  }

  bool has(const std::string &key) {
    used_.insert(key);
    return node_ && node_.IsMap() && node_[key] && !node_[key].IsNull();
  }

  YAML::Node raw(const std::string &key) {
    used_.insert(key);
    return node_ && node_.IsMap() ? node_[key] : YAML::Node();
  }

  std::string path(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

  template <typename T>
  T get(const std::string &key, T fallback) {
    if (!has(key)) return fallback;
    return convert<T>(node_[key], path(key));
  }

  template <typename T>
  T require(const std::string &key) {
    if (!has(key)) throw ConfigError("missing required key '" + path(key) + "'");
    return convert<T>(node_[key], path(key));
  }

  Section sub(const std::string &key) { return Section(raw(key), path(key)); }

  void finish(const std::string &context) const {
    if (!node_ || !node_.IsMap()) return;
    for (const auto &kv : node_) {
      auto key = kv.first.as<std::string>();
      if (!used_.contains(key)) throw ConfigError("key '" + path(key) + "' is not used by " + context);
    }
  }

  template <typename T>
  static T convert(const YAML::Node &n, const std::string &where) {
    try {
      return n.as<T>();
    } catch (const YAML::Exception &) {
      throw ConfigError("key '" + where + "' has an invalid value");
    }
  }

 private:
  std::string where() const { return path_.empty() ? "config " : "'" + path_ + "' "; }

  YAML::Node node_;
  std::string path_;
  std::set<std::string> used_;
};

double finite(double v, const std::string &where) {
  if (!std::isfinite(v)) throw ConfigError("'" + where + "' must be finite");
  return v;
}

// Scalar, list, {from, to, step} or {from, to, count[, log]}.
std::vector<double> read_range(const YAML::Node &n, const std::string &where) {
  std::vector<double> out;
  if (n.IsScalar()) {
    out.push_back(finite(Section::convert<double>(n, where), where));
  } else if (n.IsSequence()) {
    for (std::size_t i = 0; i < n.size(); ++i) out.push_back(finite(Section::convert<double>(n[i], where), where));
  } else if (n.IsMap()) {
    Section s(n, where);
    double from = finite(s.require<double>("from"), where + ".from");
    double to = finite(s.require<double>("to"), where + ".to");
    if (to < from) throw ConfigError("'" + where + "' needs from <= to");
    if (s.has("step")) {
      double step = s.require<double>("step");
      if (!(step > 0.0)) throw ConfigError("'" + where + ".step' must be positive");
      auto count = static_cast<long long>(std::floor((to - from) / step + 1e-9));
      if (count > 1'000'000) throw ConfigError("'" + where + "' has too many points");
      for (long long i = 0; i <= count; ++i) out.push_back(from + static_cast<double>(i) * step);
    } else {
      int count = s.require<int>("count");
      bool log = s.get<bool>("log", false);
      if (count < 1 || count > 1'000'000) throw ConfigError("'" + where + ".count' must be in [1, 1e6]");
      if (log && !(from > 0.0)) throw ConfigError("'" + where + "' log range needs from > 0");
      for (int i = 0; i < count; ++i) {
        double u = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        out.push_back(log ? from * std::pow(to / from, u) : from + (to - from) * u);
      }
    }
    s.finish("a range");
  } else {
    throw ConfigError("'" + where + "' must be a number, a list or a range");
  }
  if (out.empty()) throw ConfigError("'" + where + "' is empty");
  return out;
}

std::vector<int> read_int_range(const YAML::Node &n, const std::string &where) {
  std::vector<int> out;
  if (n.IsScalar()) {
    out.push_back(Section::convert<int>(n, where));
  } else if (n.IsSequence()) {
    for (std::size_t i = 0; i < n.size(); ++i) out.push_back(Section::convert<int>(n[i], where));
  } else if (n.IsMap()) {
    Section s(n, where);
    int from = s.require<int>("from"), to = s.require<int>("to"), step = s.get<int>("step", 1);
    if (to < from || step < 1) throw ConfigError("'" + where + "' needs from <= to and step >= 1");
    for (int v = from; v <= to; v += step) out.push_back(v);
    s.finish("an integer range");
  } else {
    throw ConfigError("'" + where + "' must be an integer, a list or a range");
  }
  if (out.empty()) throw ConfigError("'" + where + "' is empty");
  return out;
}

std::vector<double> positive_range(Section &s, const std::string &key, std::vector<double> fallback) {
  std::vector<double> v = s.has(key) ? read_range(s.raw(key), s.path(key)) : std::move(fallback);
  for (double x : v) {
    if (!(x > 0.0)) throw ConfigError("'" + s.path(key) + "' values must be positive");
  }
  return v;
}

std::vector<int> k_range(Section &s, std::vector<int> fallback, int lo, int hi) {
  std::vector<int> v = s.has("k") ? read_int_range(s.raw("k"), s.path("k")) : std::move(fallback);
  for (int x : v) {
    if (x < lo || x > hi) {
      throw ConfigError("'k' values must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
  }
  return v;
}

void read_bounds(Section &s, OptimizationBounds &b) {
  b.r_min = s.get<double>("r_min_um", b.r_min);
  b.r_max = s.get<double>("r_max_um", b.r_max);
  b.r_step = s.get<double>("r_step_um", b.r_step);
  if (s.has("omega_t_min_mhz")) b.omega_t_min = mhz(s.require<double>("omega_t_min_mhz"));
  if (s.has("omega_t_max_mhz")) b.omega_t_max = mhz(s.require<double>("omega_t_max_mhz"));
  if (s.has("omega_c_min_mhz")) b.omega_c_min = mhz(s.require<double>("omega_c_min_mhz"));
  if (s.has("omega_c_max_mhz")) b.omega_c_max = mhz(s.require<double>("omega_c_max_mhz"));
  b.omega_t_over_b1_max = s.get<double>("omega_t_over_b1_max", b.omega_t_over_b1_max);
}

void check_bounds(const OptimizationBounds &b, const std::string &where) {
  auto bad = [&](const std::string &what) { throw ConfigError("'" + where + "': " + what); };
  if (!(b.r_min > 0.0) || !(b.r_max >= b.r_min)) bad("need 0 < r_min_um <= r_max_um");
  if (!(b.r_step > 0.0)) bad("r_step_um must be positive");
  if (!(b.omega_t_min > 0.0) || !(b.omega_t_max >= b.omega_t_min)) bad("need 0 < omega_t_min_mhz <= omega_t_max_mhz");
  if (!(b.omega_c_min > 0.0) || !(b.omega_c_max >= b.omega_c_min)) bad("need 0 < omega_c_min_mhz <= omega_c_max_mhz");
  if (!(b.omega_t_over_b1_max > 0.0) || b.omega_t_over_b1_max > 0.42) bad("omega_t_over_b1_max must lie in (0, 0.42]");
}

void read_model(Section &s, ModelOptions &m) {
  m.spectators = s.get<bool>("spectators", m.spectators);
  m.include_b2 = s.get<bool>("b2", m.include_b2);
  m.include_vdw = s.get<bool>("vdw", m.include_vdw);
}

void read_sc(Section &s, SCGateParams &p) {
  if (s.has("b1_mhz")) p.b1 = mhz(s.require<double>("b1_mhz"));
  double b2_ratio = s.get<double>("b2_over_b1", p.b2 / p.b1);
  double ot_ratio = s.get<double>("omega_t_over_b1", p.omega_t / p.b1);
  p.b2 = b2_ratio * p.b1;
  p.omega_t = ot_ratio * p.b1;
  if (s.has("omega_c_mhz")) p.omega_c = mhz(s.require<double>("omega_c_mhz"));
  if (s.has("gamma_khz")) p.gamma = khz(s.require<double>("gamma_khz"));
  if (s.has("delta_1t1c_2t0c_ghz")) p.delta_1t1c_2t0c = ghz(s.require<double>("delta_1t1c_2t0c_ghz"));
  if (s.has("delta_1t0c_0t1c_ghz")) p.delta_1t0c_0t1c = ghz(s.require<double>("delta_1t0c_0t1c_ghz"));
  if (s.has("alpha_t_ghz")) p.alpha_t = ghz(s.require<double>("alpha_t_ghz"));
  if (s.has("alpha_c_ghz")) p.alpha_c = ghz(s.require<double>("alpha_c_ghz"));
}

const char *variant_name(BudgetVariant v) { return v == BudgetVariant::kDark ? "dark" : "blockade"; }

const char *control_name(ControlMode m) { return m == ControlMode::kIdeal ? "ideal" : "square"; }

void apply_override(YAML::Node &root, const std::string &item) {
  auto eq = item.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + item + "' must look like key=value");
  std::string key = item.substr(0, eq);
  YAML::Node value;
  try {
    value = YAML::Load(item.substr(eq + 1));
  } catch (const YAML::Exception &) {
    throw ConfigError("override '" + item + "' has an unparsable value");
  }
  std::vector<std::string> parts;
  std::stringstream ss(key);
  for (std::string p; std::getline(ss, p, '.');) {
    if (p.empty()) throw ConfigError("override key '" + key + "' has an empty component");
    parts.push_back(p);
  }
  // yaml-cpp nodes are handles; walk with fresh copies so assignment rebinds
  // the child rather than the parent.
  std::vector<YAML::Node> chain{root};
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    YAML::Node child = chain.back()[parts[i]];
    if (!child || child.IsNull()) {
      chain.back()[parts[i]] = YAML::Node(YAML::NodeType::Map);
      child = chain.back()[parts[i]];
    }
    if (!child.IsMap()) throw ConfigError("override key '" + key + "' descends into a non-mapping");
    chain.push_back(child);
  }
  chain.back()[parts.back()] = value;
}

}  // namespace

const std::vector<std::string> &command_names() {
  static const std::vector<std::string> names{"budget-vs-k",  "budget-vs-r",   "darkstate-trace",
                                              "nonadiabatic-scan", "leakage-scan", "gate-fidelity",
                                              "optimize",     "circuit-report", "sc-budget"};
  return names;
}

ExperimentConfig parse_config(const std::string &yaml_text, const std::vector<std::string> &overrides,
                              const std::string &base_dir, const std::string &command) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception &e) {
    throw ConfigError(std::string("config is not valid YAML: ") + e.what());
  }
  if (!root || root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  if (!root.IsMap()) throw ConfigError("config must be a mapping");
  for (const auto &o : overrides) apply_override(root, o);
  if (!command.empty()) {
    if (root["command"] && !root["command"].IsNull()) {
      if (Section::convert<std::string>(root["command"], "command") != command) {
        throw ConfigError("config is for command '" + root["command"].as<std::string>() + "', not '" + command + "'");
      }
    } else {
      root["command"] = command;
    }
  }

  Section top(root, "");
  ExperimentConfig c;
  c.command = top.require<std::string>("command");
  const auto &names = command_names();
  if (std::find(names.begin(), names.end(), c.command) == names.end()) {
    throw ConfigError("unknown command '" + c.command + "'");
  }
  const std::string &cmd = c.command;

  if (top.has("gates")) {
    YAML::Node g = top.raw("gates");
    if (g.IsScalar()) {
      c.gates.push_back(parse_gate_kind(g.as<std::string>()));
    } else if (g.IsSequence() && g.size() > 0) {
      for (std::size_t i = 0; i < g.size(); ++i) c.gates.push_back(parse_gate_kind(Section::convert<std::string>(g[i], "gates")));
    } else {
      throw ConfigError("'gates' must be a gate name or a non-empty list");
    }
  } else {
    c.gates = {GateKind::kToffoli, GateKind::kFanout};
  }

  c.tol = top.get<double>("tol", c.tol);
  if (!(c.tol > 0.0) || c.tol > 1e-3) throw ConfigError("'tol' must lie in (0, 1e-3]");
  c.threads = top.get<int>("threads", c.threads);
  if (c.threads < 1) throw ConfigError("'threads' must be >= 1");
  c.out = top.get<std::string>("out", "");

  const bool atomic = cmd != "circuit-report" && cmd != "sc-budget";
  if (atomic) {
    std::vector<RydbergScheme> table = builtin_schemes();
    if (top.has("schemes_file")) {
      c.schemes_file = top.require<std::string>("schemes_file");
      std::filesystem::path p(c.schemes_file);
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      table = load_schemes(p.string());
    }
    std::string name = top.get<std::string>("scheme", "101S-109S");
    auto it = std::find_if(table.begin(), table.end(), [&](const RydbergScheme &s) { return s.name == name; });
    if (it == table.end()) throw ConfigError("unknown scheme '" + name + "'");
    c.scheme = *it;
  }

  auto read_variants = [&] {
    if (!top.has("variants")) return;
    c.variants.clear();
    YAML::Node v = top.raw("variants");
    std::vector<std::string> items;
    if (v.IsScalar()) {
      items.push_back(v.as<std::string>());
    } else if (v.IsSequence()) {
      for (std::size_t i = 0; i < v.size(); ++i) items.push_back(Section::convert<std::string>(v[i], "variants"));
    }
    for (const auto &s : items) {
      if (s == "dark") {
        c.variants.push_back(BudgetVariant::kDark);
      } else if (s == "blockade") {
        c.variants.push_back(BudgetVariant::kBlockade);
      } else {
        throw ConfigError("unknown variant '" + s + "' (expected dark or blockade)");
      }
    }
    if (c.variants.empty()) throw ConfigError("'variants' is empty");
  };
  auto read_optimizer = [&] {
    Section opt = top.sub("optimizer");
    Section per[2] = {opt.sub("toffoli"), opt.sub("fanout")};
    for (GateKind g : {GateKind::kToffoli, GateKind::kFanout}) {
      OptimizationBounds b = default_bounds(g);
      Section common(top.raw("optimizer"), "optimizer");
      read_bounds(common, b);
      Section &own = per[g == GateKind::kToffoli ? 0 : 1];
      read_bounds(own, b);
      check_bounds(b, "optimizer");
      c.bounds[g] = b;
    }
    // Mark every key read by the per-gate passes on the checker instance.
    for (const char *key : {"r_min_um", "r_max_um", "r_step_um", "omega_t_min_mhz", "omega_t_max_mhz",
                            "omega_c_min_mhz", "omega_c_max_mhz", "omega_t_over_b1_max"}) {
      opt.has(key);
      per[0].has(key);
      per[1].has(key);
    }
    opt.finish("the optimizer");
    per[0].finish("the optimizer");
    per[1].finish("the optimizer");
  };
  auto read_decay = [&] { c.decay_rates = positive_range(top, "decay_rate_per_s", {1e3}); };
  auto read_omega_c = [&] {
    if (top.has("omega_c_mhz")) {
      double v = top.require<double>("omega_c_mhz");
      if (!(v > 0.0)) throw ConfigError("'omega_c_mhz' must be positive");
      c.omega_c = mhz(v);
    }
  };
  auto read_ratio = [&](std::vector<double> fallback) {
    c.omega_t_over_b1 = positive_range(top, "omega_t_over_b1", std::move(fallback));
    for (double x : c.omega_t_over_b1) {
      if (x > 10.0) throw ConfigError("'omega_t_over_b1' values must not exceed 10");
    }
  };
  auto read_geometry = [&] { c.geometry = parse_geometry(top.get<std::string>("geometry", "square")); };
  auto read_model_section = [&](bool spectators) {
    c.model.spectators = spectators;
    Section m = top.sub("model");
    read_model(m, c.model);
    m.finish("the model");
  };
  auto read_control = [&] {
    std::string s = top.get<std::string>("control", "square");
    if (s == "square") {
      c.control = ControlMode::kSquare;
    } else if (s == "ideal") {
      c.control = ControlMode::kIdeal;
    } else {
      throw ConfigError("'control' must be square or ideal");
    }
  };

  if (cmd == "budget-vs-k") {
    c.k = k_range(top, {2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20}, 1, 64);
    c.lattice_estimate = top.get<bool>("lattice_estimate", false);
    read_decay();
    read_variants();
    read_optimizer();
  } else if (cmd == "budget-vs-r") {
    c.k = k_range(top, {2}, 1, 64);
    c.r = positive_range(top, "r_um", {});
    if (c.r.empty()) throw ConfigError("missing required key 'r_um'");
    c.lattice_estimate = top.get<bool>("lattice_estimate", false);
    read_decay();
    read_variants();
    read_optimizer();
  } else if (cmd == "optimize") {
    c.k = k_range(top, {2}, 1, 64);
    if (c.k.size() != 1) throw ConfigError("'optimize' takes a single k");
    read_decay();
    if (c.decay_rates.size() != 1) throw ConfigError("'optimize' takes a single decay rate");
    read_variants();
    read_optimizer();
  } else if (cmd == "darkstate-trace") {
    c.k = k_range(top, {1}, 1, 6);
    c.r = positive_range(top, "r_um", {8.0});
    read_ratio({0.1});
    read_geometry();
    read_model_section(false);
    c.nodes = top.get<int>("nodes", c.nodes);
    if (c.nodes < 2 || c.nodes > 100000) throw ConfigError("'nodes' must lie in [2, 100000]");
  } else if (cmd == "nonadiabatic-scan") {
    c.k = k_range(top, {1, 2, 3, 4}, 1, 6);
    c.r = positive_range(top, "r_um", {8.0});
    if (c.r.size() != 1) throw ConfigError("'nonadiabatic-scan' takes a single r_um");
    read_ratio({0.05, 0.1, 0.2, 0.42});
  } else if (cmd == "leakage-scan") {
    c.r = positive_range(top, "r_um", {});
    if (c.r.empty()) throw ConfigError("missing required key 'r_um'");
    read_ratio({0.1});
    if (c.omega_t_over_b1.size() != 1) throw ConfigError("'leakage-scan' takes a single omega_t_over_b1");
    read_omega_c();
    read_control();
    if (c.scheme.leakage_channels.empty()) throw ConfigError("scheme '" + c.scheme.name + "' has no leakage channels");
  } else if (cmd == "gate-fidelity") {
    c.k = k_range(top, {2}, 1, 4);
    c.r = positive_range(top, "r_um", {8.0});
    read_ratio({0.42});
    read_omega_c();
    read_decay();
    read_geometry();
    read_model_section(true);
    read_control();
  } else if (cmd == "circuit-report") {
    Section s = top.sub("circuit");
    GateKind kind = c.gates.front();
    if (s.has("gate")) kind = parse_gate_kind(s.require<std::string>("gate"));
    c.gates = {kind};
    c.circuit_row = s.get<int>("row", 0);
    if (c.circuit_row != 0) {
      c.circuit = table_circuit(kind, c.circuit_row);
    } else {
      c.circuit.kind = kind;
      c.circuit.k = s.require<int>("k");
      c.circuit.c0 = s.require<double>("c0_pf");
      c.circuit.ci = s.require<double>("ci_pf");
      c.circuit.e0 = s.require<double>("e0_per_ns");
      c.circuit.ei = s.require<double>("ei_per_ns");
      if (s.has("cx_pf") == s.has("cx_over_ci")) throw ConfigError("give exactly one of circuit.cx_pf, circuit.cx_over_ci");
      c.circuit.cx = s.has("cx_pf") ? s.require<double>("cx_pf") : s.require<double>("cx_over_ci") * c.circuit.ci;
    }
    c.circuit.validate();
    if (s.has("tune_k")) {
      c.tune_k = read_int_range(s.raw("tune_k"), "circuit.tune_k");
      for (int k : c.tune_k) {
        if (k < 1 || k > 1000) throw ConfigError("'circuit.tune_k' values must lie in [1, 1000]");
      }
    }
    s.finish("the circuit");
  } else if (cmd == "sc-budget") {
    c.k = k_range(top, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19}, 1, 1000);
    Section s = top.sub("sc");
    Section per[2] = {s.sub("toffoli"), s.sub("fanout")};
    for (GateKind g : {GateKind::kToffoli, GateKind::kFanout}) {
      SCGateParams p = sc_example_params(g, 2);
      Section common(top.raw("sc"), "sc");
      read_sc(common, p);
      read_sc(per[g == GateKind::kToffoli ? 0 : 1], p);
      p.validate();
      c.sc[g] = p;
    }
    for (const char *key : {"b1_mhz", "b2_over_b1", "omega_t_over_b1", "omega_c_mhz", "gamma_khz",
                            "delta_1t1c_2t0c_ghz", "delta_1t0c_0t1c_ghz", "alpha_t_ghz", "alpha_c_ghz"}) {
      s.has(key);
      per[0].has(key);
      per[1].has(key);
    }
    s.finish("the superconducting budget");
    per[0].finish("the superconducting budget");
    per[1].finish("the superconducting budget");
  }
  top.finish("command '" + cmd + "'");
  return c;
}

ExperimentConfig load_config(const std::string &path, const std::vector<std::string> &overrides,
                             const std::string &command) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  std::string dir = std::filesystem::path(path).parent_path().string();
  return parse_config(ss.str(), overrides, dir.empty() ? "." : dir, command);
}

nlohmann::json ExperimentConfig::resolved() const {
  nlohmann::json j;
  j["command"] = command;
  std::vector<std::string> g;
  for (auto k : gates) g.push_back(to_string(k));
  j["gates"] = g;
  j["tol"] = tol;
  const bool atomic = command != "circuit-report" && command != "sc-budget";
  if (atomic) {
    j["scheme"] = scheme.name;
    if (!schemes_file.empty()) j["schemes_file"] = schemes_file;
  }
  if (!k.empty()) j["k"] = k;
  if (!r.empty()) j["r_um"] = r;
  if (!omega_t_over_b1.empty() && (command == "darkstate-trace" || command == "nonadiabatic-scan" ||
                                   command == "leakage-scan" || command == "gate-fidelity")) {
    j["omega_t_over_b1"] = omega_t_over_b1;
  }
  if (command == "leakage-scan" || command == "gate-fidelity") {
    j["omega_c_mhz"] = to_mhz(omega_c);
    j["control"] = control_name(control);
  }
  if (command == "budget-vs-k" || command == "budget-vs-r" || command == "optimize" || command == "gate-fidelity") {
    j["decay_rate_per_s"] = decay_rates;
  }
  if (command == "budget-vs-k" || command == "budget-vs-r" || command == "optimize") {
    std::vector<std::string> v;
    for (auto x : variants) v.push_back(variant_name(x));
    j["variants"] = v;
    if (command != "optimize") j["lattice_estimate"] = lattice_estimate;
    nlohmann::json opt;
    for (const auto &[kind, b] : bounds) {
      opt[to_string(kind)] = {{"r_min_um", b.r_min},
                              {"r_max_um", b.r_max},
                              {"r_step_um", b.r_step},
                              {"omega_t_min_mhz", to_mhz(b.omega_t_min)},
                              {"omega_t_max_mhz", to_mhz(b.omega_t_max)},
                              {"omega_c_min_mhz", to_mhz(b.omega_c_min)},
                              {"omega_c_max_mhz", to_mhz(b.omega_c_max)},
                              {"omega_t_over_b1_max", b.omega_t_over_b1_max}};
    }
    j["optimizer"] = opt;
  }
  if (command == "darkstate-trace" || command == "gate-fidelity") {
    j["geometry"] = to_string(geometry);
    j["model"] = {{"spectators", model.spectators}, {"b2", model.include_b2}, {"vdw", model.include_vdw}};
  }
  if (command == "darkstate-trace") j["nodes"] = nodes;
  if (command == "circuit-report") {
    j["circuit"] = {{"gate", to_string(circuit.kind)}, {"row", circuit_row},  {"k", circuit.k},
                    {"c0_pf", circuit.c0},             {"ci_pf", circuit.ci}, {"cx_pf", circuit.cx},
                    {"e0_per_ns", circuit.e0},         {"ei_per_ns", circuit.ei}};
    if (!tune_k.empty()) j["circuit"]["tune_k"] = tune_k;
  }
  if (command == "sc-budget") {
    nlohmann::json s;
    for (const auto &[kind, p] : sc) {
      s[to_string(kind)] = {{"b1_mhz", to_mhz(p.b1)},
                            {"b2_over_b1", p.b2 / p.b1},
                            {"omega_t_over_b1", p.omega_t / p.b1},
                            {"omega_c_mhz", to_mhz(p.omega_c)},
                            {"gamma_khz", p.gamma / khz(1.0)},
                            {"delta_1t1c_2t0c_ghz", to_ghz(p.delta_1t1c_2t0c)},
                            {"delta_1t0c_0t1c_ghz", to_ghz(p.delta_1t0c_0t1c)},
                            {"alpha_t_ghz", to_ghz(p.alpha_t)},
                            {"alpha_c_ghz", to_ghz(p.alpha_c)}};
    }
    j["sc"] = s;
  }
  return j;
}

}  // namespace darkgate
