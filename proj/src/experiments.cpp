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

#include "darkgate/experiments.hpp"

#include <cmath>
#include <optional>

#include <fmt/format.h>

#include "darkgate/errors.hpp"

namespace darkgate {

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  return fmt::format("{:.10g}", v);
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream &out, const ExperimentConfig &c, const Table &t) {
  out << "# schema: darkgate." << c.command << "/1\n";
  out << "# config: " << c.resolved().dump() << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << "\n";
  for (const auto &row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
}

void write_json(std::ostream &out, const ExperimentConfig &c, nlohmann::json body) {
  body["schema"] = "darkgate." + c.command + "/1";
  body["config"] = c.resolved();
  out << body.dump(2) << "\n";
}

const char *variant_name(BudgetVariant v) { return v == BudgetVariant::kDark ? "dark" : "blockade"; }

// Budget rows share the union of term names, in first-seen order.
struct BudgetRow {
  std::vector<std::string> lead;
  std::optional<OptimizationResult> result;
  double lattice_total = std::nan("");
};

Table budget_table(const std::vector<std::string> &lead_columns, const std::vector<BudgetRow> &rows, bool lattice) {
  std::vector<std::string> names;
  for (const auto &r : rows) {
    if (!r.result) continue;
    for (const auto &t : r.result->budget.terms) {
      if (std::find(names.begin(), names.end(), t.name) == names.end()) names.push_back(t.name);
    }
  }
  Table t;
  t.columns = lead_columns;
  for (const char *c : {"r_um", "omega_t_mhz", "omega_c_mhz", "omega_t_over_b1", "b1_mhz", "total"}) t.columns.push_back(c);
  for (const auto &n : names) t.columns.push_back(n);
  if (lattice) t.columns.push_back("lattice_total");
  for (const auto &r : rows) {
    std::vector<std::string> row = r.lead;
    if (!r.result) {
      row.resize(t.columns.size(), "nan");
    } else {
      const GateParams &p = r.result->params;
      const ErrorBudget &b = r.result->budget;
      for (double v : {p.r, to_mhz(p.omega_t), to_mhz(p.omega_c), p.omega_t / p.b1, to_mhz(p.b1), b.total()}) row.push_back(num(v));
      for (const auto &n : names) {
        row.push_back(b.has_term(n) ? num(b.term(n)) : "");
      }
      if (lattice) row.push_back(num(r.lattice_total));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

void budget_scan(const ExperimentConfig &c, std::ostream &out, bool fixed_r) {
  struct Task {
    GateKind gate;
    BudgetVariant variant;
    double decay;
    int k;
    double r;
  };
  std::vector<Task> tasks;
  std::vector<double> radii = fixed_r ? c.r : std::vector<double>{0.0};
  for (GateKind g : c.gates) {
    for (BudgetVariant v : c.variants) {
      for (double d : c.decay_rates) {
        for (int k : c.k) {
          for (double r : radii) tasks.push_back({g, v, d, k, r});
        }
      }
    }
  }
  std::vector<BudgetRow> rows(tasks.size());
  parallel_for(tasks.size(), c.threads, [&](std::size_t i) {
    const Task &t = tasks[i];
    OptimizationBounds b = c.bounds.at(t.gate);
    b.decay_rate = t.decay;
    b.variant = t.variant;
    if (fixed_r) b.r_min = b.r_max = t.r;
    rows[i].lead = {to_string(t.gate), variant_name(t.variant), num(t.decay), std::to_string(t.k)};
    try {
      rows[i].result = optimize_parameters(t.gate, t.k, c.scheme, b);
      if (c.lattice_estimate && t.variant == BudgetVariant::kDark) {
        const GateParams &p = rows[i].result->params;
        SystemConfig s;
        s.kind = t.gate;
        s.k = t.k;
        s.scheme = c.scheme;
        s.geometry = Geometry::kSquare;
        s.lattice_constant = p.r;
        s.omega_t = p.omega_t;
        s.omega_c = p.omega_c;
        s.decay_rate = t.decay;
        rows[i].lattice_total = lattice_error_budget(s, place_atoms(t.k, Geometry::kSquare, p.r)).total();
      }
    } catch (const ConfigError &) {
      // No feasible drive at this fixed separation; reported as nan.
      if (!fixed_r) throw;
    }
  });
  write_csv(out, c, budget_table({"gate", "variant", "decay_rate_per_s", "k"}, rows, c.lattice_estimate));
}

void optimize_command(const ExperimentConfig &c, std::ostream &out) {
  nlohmann::json results = nlohmann::json::array();
  for (GateKind g : c.gates) {
    for (BudgetVariant v : c.variants) {
      OptimizationBounds b = c.bounds.at(g);
      b.decay_rate = c.decay_rates.front();
      b.variant = v;
      OptimizationResult r = optimize_parameters(g, c.k.front(), c.scheme, b);
      results.push_back({{"gate", to_string(g)},
                         {"variant", variant_name(v)},
                         {"k", c.k.front()},
                         {"r_um", r.params.r},
                         {"omega_t_mhz", to_mhz(r.params.omega_t)},
                         {"omega_c_mhz", to_mhz(r.params.omega_c)},
                         {"b1_mhz", to_mhz(r.params.b1)},
                         {"total", r.budget.total()},
                         {"budget", r.budget.to_json()}});
    }
  }
  write_json(out, c, {{"results", results}});
}

SystemConfig system_for(const ExperimentConfig &c, GateKind g, int k, double r, double ratio) {
  SystemConfig s;
  s.kind = g;
  s.k = k;
  s.scheme = c.scheme;
  s.geometry = c.geometry;
  s.lattice_constant = r;
  s.omega_t = 0.0;
  s.omega_t_over_b1 = ratio;
  s.omega_c = c.omega_c;
  s.decay_rate = c.decay_rates.front();
  return s;
}

void darkstate_trace(const ExperimentConfig &c, std::ostream &out) {
  struct Task {
    GateKind gate;
    int j;
    double r, ratio;
  };
  std::vector<Task> tasks;
  for (GateKind g : c.gates) {
    for (int j : c.k) {
      for (double r : c.r) {
        for (double x : c.omega_t_over_b1) tasks.push_back({g, j, r, x});
      }
    }
  }
  std::vector<std::vector<std::vector<std::string>>> blocks(tasks.size());
  parallel_for(tasks.size(), c.threads, [&](std::size_t i) {
    const Task &t = tasks[i];
    SystemConfig s = system_for(c, t.gate, t.j, t.r, t.ratio);
    GateModel m = build_gate_model(s, place_atoms(t.j, c.geometry, t.r), c.model);
    DarkStateRun run = track_dark_state(m, t.j, c.tol, c.nodes);
    for (std::size_t n = 0; n < run.trajectory.times.size(); ++n) {
      double time = run.trajectory.times[n];
      blocks[i].push_back({to_string(t.gate), std::to_string(t.j), num(t.r), num(t.ratio), num(time * 1e6),
                           num(to_mhz(m.pulse.amplitude(time))), num(run.infidelity[n])});
    }
  });
  Table tab;
  tab.columns = {"gate", "j", "r_um", "omega_t_over_b1", "t_us", "omega_mhz", "dark_infidelity"};
  for (auto &b : blocks) {
    for (auto &row : b) tab.rows.push_back(std::move(row));
  }
  write_csv(out, c, tab);
}

void nonadiabatic_scan(const ExperimentConfig &c, std::ostream &out) {
  struct Task {
    GateKind gate;
    int j;
    double ratio;
  };
  std::vector<Task> tasks;
  for (GateKind g : c.gates) {
    for (int j : c.k) {
      for (double x : c.omega_t_over_b1) tasks.push_back({g, j, x});
    }
  }
  Table tab;
  tab.columns = {"gate",     "j",        "omega_t_over_b1", "bright_population", "estimate", "envelope",
                 "ratio_to_estimate", "blockade_r3"};
  tab.rows.resize(tasks.size());
  parallel_for(tasks.size(), c.threads, [&](std::size_t i) {
    const Task &t = tasks[i];
    double sim = simulate_bright_population(t.gate, t.j, t.ratio, c.scheme, c.r.front(), c.tol);
    double est = nonadiabatic_estimate(t.gate, t.ratio, 1.0, t.j);
    double r3 = t.gate == GateKind::kToffoli ? t.ratio * t.ratio / (4.0 * t.j * t.j) : t.j * t.ratio * t.ratio / 4.0;
    tab.rows[i] = {to_string(t.gate), std::to_string(t.j), num(t.ratio), num(sim), num(est), num(3.0 * est),
                   num(sim / est), num(r3)};
  });
  write_csv(out, c, tab);
}

void leakage_command(const ExperimentConfig &c, std::ostream &out) {
  Table tab;
  tab.columns = {"gate", "r_um", "phase_rad", "leaked", "envelope", "leaked_over_envelope"};
  ProtocolOptions po;
  po.control = c.control;
  po.tol = c.tol;
  po.threads = c.threads;
  for (GateKind g : c.gates) {
    SystemConfig s = system_for(c, g, 2, c.r.front(), c.omega_t_over_b1.front());
    s.geometry = Geometry::kLinear;
    for (const LeakagePoint &p : leakage_scan(s, c.r, po)) {
      tab.rows.push_back({to_string(g), num(p.r), num(p.phase), num(p.leaked), num(p.envelope), num(p.leaked / p.envelope)});
    }
  }
  write_csv(out, c, tab);
}

void fidelity_command(const ExperimentConfig &c, std::ostream &out) {
  Table tab;
  tab.columns = {"gate",
                 "k",
                 "r_um",
                 "omega_t_over_b1",
                 "omega_t_mhz",
                 "omega_c_mhz",
                 "decay_rate_per_s",
                 "coherent_infidelity",
                 "spontaneous_emission",
                 "numeric_total",
                 "analytic_total",
                 "numeric_over_analytic",
                 "max_column_leakage",
                 "unitarity_defect"};
  ProtocolOptions po;
  po.control = c.control;
  po.tol = c.tol;
  po.threads = c.threads;
  for (GateKind g : c.gates) {
    for (int k : c.k) {
      for (double r : c.r) {
        for (double x : c.omega_t_over_b1) {
          for (double d : c.decay_rates) {
            SystemConfig s = system_for(c, g, k, r, x);
            s.decay_rate = d;
            LatticeConfig lattice = place_atoms(k, c.geometry, r);
            GateUnitary u = gate_unitary(s, lattice, c.model, po);
            double coherent = 1.0 - average_gate_fidelity(u.matrix, ideal_gate(g, k));
            ErrorBudget analytic = lattice_error_budget(s, lattice);
            double se = analytic.term("se_t") + analytic.term("se_c");
            double numeric = coherent + se;
            double leak = *std::max_element(u.column_leakage.begin(), u.column_leakage.end());
            tab.rows.push_back({to_string(g), std::to_string(k), num(r), num(x), num(to_mhz(resolve_omega_t(s))),
                                num(to_mhz(s.omega_c)), num(d), num(coherent), num(se), num(numeric),
                                num(analytic.total()), num(numeric / analytic.total()), num(leak),
                                num(u.unitarity_defect)});
          }
        }
      }
    }
  }
  write_csv(out, c, tab);
}

void circuit_command(const ExperimentConfig &c, std::ostream &out) {
  QuantizedCircuit q = quantize(c.circuit);
  nlohmann::json body;
  body["circuit"] = q.to_json();
  try {
    body["degenerate_c0_pf"] = tune_degeneracy(c.circuit);
  } catch (const ConfigError &e) {
    body["degenerate_c0_pf"] = nullptr;
    body["degenerate_c0_note"] = e.what();
  }
  // B2/B1 across the example rows of this gate kind.
  nlohmann::json rows = nlohmann::json::array();
  std::vector<double> lx, ly;
  for (int row = 1; row <= 3; ++row) {
    CircuitSpec s = table_circuit(c.circuit.kind, row);
    QuantizedCircuit qr = quantize(s);
    rows.push_back({{"row", row}, {"cx_over_ci", s.cx / s.ci}, {"c0_pf", s.c0}, {"B1", qr.b1},
                    {"B2_over_B1", qr.b2 / qr.b1}});
    lx.push_back(std::log(s.cx / s.ci));
    ly.push_back(std::log(qr.b2 / qr.b1));
  }
  double mx = (lx[0] + lx[1] + lx[2]) / 3.0, my = (ly[0] + ly[1] + ly[2]) / 3.0, sxy = 0.0, sxx = 0.0;
  for (int i = 0; i < 3; ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  body["scaling"] = {{"rows", rows}, {"log_slope_b2_over_b1_vs_cx_over_ci", sxy / sxx}};
  nlohmann::json tuned = nlohmann::json::array();
  for (int k : c.tune_k) {
    CircuitSpec s = c.circuit;
    s.k = k;
    nlohmann::json entry{{"k", k}};
    try {
      s.c0 = tune_degeneracy(s);
      QuantizedCircuit qk = quantize(s);
      entry["c0_pf"] = s.c0;
      entry["B1"] = qk.b1;
      entry["B2_over_B1"] = qk.b2 / qk.b1;
    } catch (const ConfigError &e) {
      entry["c0_pf"] = nullptr;
      entry["note"] = e.what();
    }
    tuned.push_back(entry);
  }
  if (!c.tune_k.empty()) body["tuned"] = tuned;
  write_json(out, c, body);
}

void sc_budget_command(const ExperimentConfig &c, std::ostream &out) {
  Table tab;
  tab.columns = {"gate", "k", "b1_mhz", "omega_t_mhz", "omega_c_mhz", "total", "dis", "rot", "ex1", "ex2", "adi"};
  for (GateKind g : c.gates) {
    for (int k : c.k) {
      SCGateParams p = c.sc.at(g);
      p.k = k;
      ErrorBudget b = sc_error_budget(p);
      std::vector<std::string> row{to_string(g), std::to_string(k), num(to_mhz(p.b1)), num(to_mhz(p.omega_t)),
                                   num(to_mhz(p.omega_c)), num(b.total())};
      for (const char *n : {"dis", "rot", "ex1", "ex2", "adi"}) row.push_back(num(b.term(n)));
      tab.rows.push_back(std::move(row));
    }
  }
  write_csv(out, c, tab);
}

}  // namespace

std::string output_format(const std::string &command) {
  return command == "optimize" || command == "circuit-report" ? "json" : "csv";
}

void run_experiment(const ExperimentConfig &c, std::ostream &out) {
  const std::string &cmd = c.command;
  if (cmd == "budget-vs-k") {
    budget_scan(c, out, false);
  } else if (cmd == "budget-vs-r") {
    budget_scan(c, out, true);
  } else if (cmd == "optimize") {
    optimize_command(c, out);
  } else if (cmd == "darkstate-trace") {
    darkstate_trace(c, out);
  } else if (cmd == "nonadiabatic-scan") {
    nonadiabatic_scan(c, out);
  } else if (cmd == "leakage-scan") {
    leakage_command(c, out);
  } else if (cmd == "gate-fidelity") {
    fidelity_command(c, out);
  } else if (cmd == "circuit-report") {
    circuit_command(c, out);
  } else if (cmd == "sc-budget") {
    sc_budget_command(c, out);
  } else {
    throw ConfigError("unknown command '" + cmd + "'");
  }
}

}  // namespace darkgate
