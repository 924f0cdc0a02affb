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

// Acceptance checks. Without arguments every criterion runs and prints one
// line each; with a number only that criterion runs. The exit status is zero
// only when every selected criterion passes.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "darkgate/analytics.hpp"
#include "darkgate/config.hpp"
#include "darkgate/experiments.hpp"
#include "darkgate/gate.hpp"
#include "darkgate/supercircuit.hpp"
#include "darkgate/units.hpp"

namespace darkgate {
namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string preset(const std::string &name) { return std::string(DARKGATE_CONFIG_DIR) + "/" + name + ".cfg"; }

// Rows of a CSV produced by run_experiment, keyed by column name.
struct Csv {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t col(const std::string &name) const {
    auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw std::runtime_error("missing column " + name);
    return static_cast<std::size_t>(it - columns.begin());
  }
  double num(std::size_t row, const std::string &name) const { return std::stod(rows[row][col(name)]); }
};

std::vector<std::string> split(const std::string &line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

Csv replay(const std::string &name, const std::vector<std::string> &overrides = {}) {
  ExperimentConfig c = load_config(preset(name), overrides);
  std::ostringstream out;
  run_experiment(c, out);
  std::istringstream in(out.str());
  Csv csv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (csv.columns.empty()) {
      csv.columns = split(line);
    } else {
      csv.rows.push_back(split(line));
    }
  }
  return csv;
}

Outcome criterion_1() {
  const auto &s = find_scheme("101S-109S");
  const auto &ch3 = s.leakage_channels.at(2);
  const double d3 = critical_distance(ch3.c3, ch3.delta_mhz);
  const bool ok3 = std::abs(d3 / 8.0 - 1.0) <= 0.02;
  // The 87S/95S row carries no channel table. Scale channel 3: C3 by the
  // single-multi coefficient ratio, the pair detuning by n^-3 of the multi species.
  const auto &low = find_scheme("87S-95S");
  const double c3 = ch3.c3 * low.c3_b1 / s.c3_b1;
  const double delta = ch3.delta_mhz * std::pow(static_cast<double>(s.n_multi) / low.n_multi, 3);
  const double d87 = critical_distance(c3, delta);
  const bool ok87 = std::abs(d87 / 4.5 - 1.0) <= 0.05;
  return {ok3 && ok87, fmt::format("channel 3 d_c = {:.3f} um (target 8.0 +-2%) {}; 87S/95S scaled estimate {:.2f} um "
                                   "(target 4.5 +-5%) {}",
                                   d3, ok3 ? "ok" : "off", d87, ok87 ? "ok" : "off")};
}

Outcome criterion_2() {
  ExperimentConfig c = load_config(preset("fig4b"));
  double worst[2] = {0.0, 0.0};
  int worst_k[2] = {0, 0};
  for (int g = 0; g < 2; ++g) {
    GateKind kind = g == 0 ? GateKind::kToffoli : GateKind::kFanout;
    OptimizationBounds b = c.bounds.at(kind);
    b.decay_rate = 1e3;
    for (int k = 2; k <= 20; ++k) {
      double total = optimize_parameters(kind, k, c.scheme, b).budget.total();
      if (total > worst[g]) {
        worst[g] = total;
        worst_k[g] = k;
      }
    }
  }
  return {worst[0] < 0.01 && worst[1] < 0.01,
          fmt::format("max optimized total over k=2..20: toffoli {:.3e} (k={}), fanout {:.3e} (k={}); bound 0.01",
                      worst[0], worst_k[0], worst[1], worst_k[1])};
}

Outcome criterion_3() {
  ExperimentConfig c = load_config(preset("fig4b"));
  const double quoted[2][2] = {{0.02, 0.09}, {0.015, 0.35}};
  bool pass = true;
  std::string detail;
  for (int g = 0; g < 2; ++g) {
    GateKind kind = g == 0 ? GateKind::kToffoli : GateKind::kFanout;
    OptimizationBounds b = c.bounds.at(kind);
    b.decay_rate = 1e3;
    double lo = INFINITY, hi = 0.0, lo_opt = INFINITY, hi_opt = 0.0;
    for (int k = 4; k <= 23; ++k) {
      GateParams p = optimize_parameters(kind, k, c.scheme, b).params;
      double v = blockade_error_budget(p, p.b1).total();
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      OptimizationBounds bb = b;
      bb.variant = BudgetVariant::kBlockade;
      double w = optimize_parameters(kind, k, c.scheme, bb).budget.total();
      lo_opt = std::min(lo_opt, w);
      hi_opt = std::max(hi_opt, w);
    }
    bool ok = std::abs(lo / quoted[g][0] - 1.0) <= 0.3 && std::abs(hi / quoted[g][1] - 1.0) <= 0.3;
    pass = pass && ok;
    detail += fmt::format("{}{} [{:.3g}, {:.3g}] vs [{}, {}] {} (blockade-optimized [{:.3g}, {:.3g}])",
                          g ? "; " : "", to_string(kind), lo, hi, quoted[g][0], quoted[g][1], ok ? "ok" : "off",
                          lo_opt, hi_opt);
  }
  return {pass, detail};
}

Outcome criterion_4() {
  const auto &s = find_scheme("101S-109S");
  int inside = 0, total = 0;
  double min_ratio = INFINITY, max_ratio = 0.0;
  for (GateKind kind : {GateKind::kToffoli, GateKind::kFanout}) {
    for (int j = 1; j <= 4; ++j) {
      for (double x : {0.05, 0.1, 0.2, 0.42}) {
        double sim = simulate_bright_population(kind, j, x, s, 10.0, 1e-11);
        double ratio = sim / nonadiabatic_estimate(kind, x, 1.0, j);
        min_ratio = std::min(min_ratio, ratio);
        max_ratio = std::max(max_ratio, ratio);
        ++total;
        if (ratio >= 0.3 && ratio <= 3.0) ++inside;
      }
    }
  }
  return {inside == total, fmt::format("{}/{} cases within [0.3, 3] x closed form; simulated/closed form spans "
                                       "[{:.3g}, {:.3g}]",
                                       inside, total, min_ratio, max_ratio)};
}

// Largest |eigenvalue| of H restricted to the states reachable from `support`.
double spectral_norm(const SparseMatrix &h, const StateVector &support) {
  std::vector<std::size_t> seeds;
  for (std::size_t i = 0; i < support.basis()->dimension(); ++i) {
    if (support[i] != Complex(0.0)) seeds.push_back(i);
  }
  std::vector<const SparseMatrix *> parts{&h};
  auto idx = reachable_indices(parts, seeds);
  DenseMatrix d(restrict_to(h, idx));
  return Eigen::SelfAdjointEigenSolver<DenseMatrix>(d, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().maxCoeff();
}

double relative_residual(const SparseMatrix &h, const StateVector &d) {
  return (h * d.amplitudes()).norm() / (spectral_norm(h, d) * d.norm());
}

Outcome criterion_5() {
  const auto &s = find_scheme("101S-109S");
  ModelOptions o;
  o.spectators = false;
  o.include_b2 = false;
  double toffoli_worst = 0.0;
  for (int j = 1; j <= 6; ++j) {
    SystemConfig c;
    c.kind = GateKind::kToffoli;
    c.k = j;
    c.scheme = s;
    c.lattice_constant = 10.0;
    c.omega_t_over_b1 = 0.42;
    GateModel m = build_gate_model(c, star_lattice(j, 10.0), o);
    auto dark = toffoli_analytic_dark_state(m, j);
    for (double f : {0.25, 0.5, 0.75}) {
      double t = f * m.pulse.duration;
      toffoli_worst = std::max(toffoli_worst, relative_residual(m.dark_hamiltonian(t), dark(t)));
    }
  }
  bool pass = toffoli_worst < 1e-10;
  std::string detail = fmt::format("toffoli j=1..6 max residual {:.2e} (bound 1e-10)", toffoli_worst);
  for (int j = 1; j <= 3; ++j) {
    SystemConfig c;
    c.kind = GateKind::kFanout;
    c.k = j;
    c.scheme = s;
    c.lattice_constant = 10.0;
    GateModel m = build_gate_model(c, star_lattice(j, 10.0), o);
    const double b1 = std::abs(m.b1_couplings[0]);
    auto residual = [&](double x) {
      SparseMatrix h = m.exchange_b1 + m.target_drive_bare * Complex(2.0 * x * b1);
      return relative_residual(h, embed_fanout_ladder(m, j, fanout_dark_state(2.0 * x * b1, b1, j).amplitudes));
    };
    if (j == 1) {
      double r = std::max(residual(0.05), residual(0.2));
      pass = pass && r < 1e-10;
      detail += fmt::format("; fanout j=1 residual {:.2e}", r);
    } else {
      const double r1 = residual(0.01), r2 = residual(0.02);
      const double slope = std::log(r2 / r1) / std::log(2.0);
      const bool ok = slope >= j + 1 - 0.05;
      pass = pass && ok;
      detail += fmt::format("; fanout j={} residual slope {:.2f} (need >= {}) {}", j, slope, j + 1, ok ? "ok" : "off");
    }
  }
  return {pass, detail};
}

Outcome criterion_6() {
  bool pass = true;
  std::string detail;
  for (const char *name : {"fig8a", "fig8b"}) {
    Csv csv = replay(name);
    for (std::size_t i = 0; i < csv.rows.size(); ++i) {
      double ratio = csv.num(i, "numeric_over_analytic");
      bool ok = ratio >= 0.5 && ratio <= 2.0;
      pass = pass && ok;
      detail += fmt::format("{}{} k={} numeric/analytic {:.3f}", detail.empty() ? "" : "; ",
                            csv.rows[i][csv.col("gate")], csv.rows[i][csv.col("k")], ratio);
    }
  }
  return {pass, detail + " (need within a factor of 2)"};
}

Outcome criterion_7() {
  bool pass = true;
  std::string detail;
  for (const char *name : {"fig7a", "fig7b"}) {
    Csv csv = replay(name);
    for (const char *gate : {"toffoli", "fanout"}) {
      std::vector<double> below_violations, above_violations;
      double previous_phase = INFINITY, first_phase = 0.0, last_phase = 0.0;
      bool monotone = true;
      bool seen = false;
      for (std::size_t i = 0; i < csv.rows.size(); ++i) {
        if (csv.rows[i][csv.col("gate")] != gate) continue;
        seen = true;
        double r = csv.num(i, "r_um");
        double ratio = csv.num(i, "leaked_over_envelope");
        double phase = std::abs(csv.num(i, "phase_rad"));
        if (r >= 8.0 - 1e-9) {
          if (ratio > 1.0) below_violations.push_back(r);
          if (phase > previous_phase) monotone = false;
          if (!std::isfinite(previous_phase)) first_phase = phase;
          previous_phase = last_phase = phase;
        } else if (r <= 7.0 + 1e-9 && ratio <= 1.0) {
          above_violations.push_back(r);
        }
      }
      bool vanishing = last_phase < 0.2 * first_phase;
      bool ok = seen && below_violations.empty() && above_violations.empty() && monotone && vanishing;
      pass = pass && ok;
      std::string over;
      for (double r : below_violations) over += fmt::format(" {:g}", r);
      detail += fmt::format("{}{} {}: leaked > envelope at r >= 8 um for r ={}; every r <= 7 um exceeding {}; "
                            "phase monotone {}, {:.3g} -> {:.3g} rad",
                            detail.empty() ? "" : "; ", name, gate, over.empty() ? " none" : over,
                            above_violations.empty() ? "yes" : "no", monotone ? "yes" : "no", first_phase,
                            last_phase);
    }
  }
  return {pass, detail};
}

Outcome criterion_8() {
  ExperimentConfig c = load_config(preset("fig9"));
  double worst[2] = {0.0, 0.0};
  for (int g = 0; g < 2; ++g) {
    GateKind kind = g == 0 ? GateKind::kToffoli : GateKind::kFanout;
    for (int k = 1; k < 20; ++k) {
      SCGateParams p = c.sc.at(kind);
      p.k = k;
      worst[g] = std::max(worst[g], sc_error_budget(p).total());
    }
  }
  return {worst[0] < 0.02 && worst[1] < 0.02,
          fmt::format("max total over k=1..19: toffoli {:.4f}, fanout {:.4f}; bound 0.02", worst[0], worst[1])};
}

Outcome criterion_9() {
  bool pass = true;
  std::string detail;
  for (GateKind kind : {GateKind::kToffoli, GateKind::kFanout}) {
    double defect = 0.0;
    std::vector<double> lx, ly;
    double cofactor_error = 0.0;
    for (int row = 1; row <= 3; ++row) {
      CircuitSpec s = table_circuit(kind, row);
      QuantizedCircuit q = quantize(s);
      defect = std::max(defect, q.inverse_defect);
      lx.push_back(std::log(s.cx / s.ci));
      ly.push_back(std::log(q.b2 / q.b1));
      // Adjugate of the 3 x 3 star capacitance matrix.
      const Eigen::MatrixXd &c = q.capacitance;
      Eigen::Matrix3d adj;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
          adj(i, j) = c(r0, c0) * c(r1, c1) - c(r0, c1) * c(r1, c0);
        }
      }
      double det = c(0, 0) * adj(0, 0) + c(0, 1) * adj(1, 0) + c(0, 2) * adj(2, 0);
      cofactor_error = std::max(cofactor_error, ((adj / det) - q.inverse).cwiseAbs().maxCoeff() / q.inverse.cwiseAbs().maxCoeff());
    }
    double s12 = (ly[0] - ly[1]) / (lx[0] - lx[1]);
    double s23 = (ly[1] - ly[2]) / (lx[1] - lx[2]);
    bool ok = defect <= 1e-12 && std::abs(s12 / s23 - 1.0) <= 0.05 && cofactor_error < 1e-12;
    pass = pass && ok;
    detail += fmt::format("{}{}: max |C C^-1 - I| {:.1e}, log slopes {:.4f} / {:.4f}, cofactor rel. error {:.1e}",
                          detail.empty() ? "" : "; ", to_string(kind), defect, s12, s23, cofactor_error);
  }
  return {pass, detail};
}

Outcome criterion_10() {
  DenseMatrix id = DenseMatrix::Identity(8, 8);
  DenseMatrix flip = id;
  flip(7, 7) = -1.0;
  const double f_id = average_gate_fidelity(id, id);
  const double f_phase = average_gate_fidelity(Complex(std::cos(0.7), std::sin(0.7)) * flip, flip);
  const double f_flip = average_gate_fidelity(flip, id);
  bool pass = std::abs(f_id - 1.0) < 1e-14 && std::abs(f_phase - 1.0) < 1e-14 && std::abs(f_flip - 44.0 / 72.0) < 1e-14;
  double area_error = 0.0;
  for (double peak : {mhz(0.016), mhz(1.0), mhz(8.0)}) {
    area_error = std::max(area_error, std::abs(make_pulse(peak).area() - 2.0 * kPi));
  }
  pass = pass && area_error < 1e-9;
  // Composite Simpson rule on the unit-peak shape, independent of the library quadrature.
  auto shape = [](double u) { return std::exp(-0.5 * u * u) - std::exp(-25.0 / 8.0); };
  const int n = 20000;
  double sum = shape(-2.5) + shape(2.5);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * shape(-2.5 + 5.0 * i / n);
  const double per_sigma = sum * (5.0 / n) / 3.0;  // integral over u = (t - T/2) / sigma
  const double oracle = 2.0 * kPi * 5.0 / per_sigma;  // T * peak with sigma = T / 5
  const double product = make_pulse(mhz(1.0)).duration * mhz(1.0);
  pass = pass && std::abs(product - 13.93) <= 0.01 && std::abs(product - oracle) < 1e-6;
  return {pass, fmt::format("F(id)={:.15f} F(phase)={:.15f} F(diag -1)={:.15f} (44/72={:.15f}); max |area - 2pi| {:.1e}; "
                            "T*Omega {:.5f} vs Simpson {:.5f}",
                            f_id, f_phase, f_flip, 44.0 / 72.0, area_error, product, oracle)};
}

}  // namespace
}  // namespace darkgate

int main(int argc, char **argv) {
  using namespace darkgate;
  const std::vector<std::function<Outcome()>> criteria{criterion_1, criterion_2, criterion_3, criterion_4,
                                                       criterion_5, criterion_6, criterion_7, criterion_8,
                                                       criterion_9, criterion_10};
  std::vector<int> selected;
  if (argc > 1) {
    int n = std::atoi(argv[1]);
    if (n < 1 || n > static_cast<int>(criteria.size())) {
      std::cerr << "usage: acceptance [1-10]\n";
      return 2;
    }
    selected.push_back(n);
  } else {
    for (int n = 1; n <= static_cast<int>(criteria.size()); ++n) selected.push_back(n);
  }
  bool all = true;
  for (int n : selected) {
    Outcome o;
    try {
      o = criteria[static_cast<std::size_t>(n - 1)]();
    } catch (const std::exception &e) {
      o = {false, std::string("error: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
