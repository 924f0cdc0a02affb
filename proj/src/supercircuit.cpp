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

#include "darkgate/supercircuit.hpp"

#include <cmath>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "darkgate/errors.hpp"
#include "darkgate/gate.hpp"
#include "darkgate/units.hpp"

namespace darkgate {

namespace {

constexpr int kFockLevels = 4;

double sq(double x) { return x * x; }

void require_positive(double v, const char *name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(name) + " must be positive and finite");
}

void require_finite(double v, const char *name) {
  if (!std::isfinite(v)) throw ConfigError(std::string(name) + " must be finite");
}

double pair_detuning(const QuantizedCircuit &q, int nt_hi, int nc_hi, int nt_lo, int nc_lo) {
  auto t = static_cast<Eigen::Index>(q.target_node), c = static_cast<Eigen::Index>(q.control_node);
  return q.levels(t, nt_hi) + q.levels(c, nc_hi) - q.levels(t, nt_lo) - q.levels(c, nc_lo);
}

std::vector<LevelSet> fock_atoms(int k) {
  std::vector<std::string> labels;
  for (int n = 0; n < kFockLevels; ++n) labels.push_back(std::to_string(n));
  std::vector<LevelSet> atoms{LevelSet(labels, Role::kSingle, false)};
  for (int i = 0; i < k; ++i) atoms.emplace_back(labels, Role::kMulti, false);
  return atoms;
}

}  // namespace

void CircuitSpec::validate() const {
  if (k < 1) throw ConfigError("circuit needs k >= 1");
  require_positive(c0, "C_0");
  require_positive(ci, "C_i");
  // C_x = 0 is the decoupled limit.
  if (!(cx >= 0.0) || !std::isfinite(cx)) throw ConfigError("C_x must be non-negative and finite");
  require_positive(e0, "E_0");
  require_positive(ei, "E_i");
}

CircuitSpec table_circuit(GateKind kind, int row) {
  if (row < 1 || row > 3) throw ConfigError("circuit table rows are 1..3");
  CircuitSpec s;
  s.kind = kind;
  s.k = 2;
  const auto r = static_cast<std::size_t>(row - 1);
  if (kind == GateKind::kToffoli) {
    const double ratio[] = {1e-1, 1e-2, 1e-3};
    const double c0[] = {24.54, 22.79, 22.62};
    s.c0 = c0[r];
    s.ci = 5.0;
    s.cx = ratio[r] * s.ci;
    s.e0 = 20.0;
    s.ei = 1.25;
  } else {
    const double ratio[] = {1e-2, 1e-3, 1e-4};
    const double c0[] = {1.40, 1.48, 1.48};
    s.c0 = c0[r];
    s.ci = 20.0;
    s.cx = ratio[r] * s.ci;
    s.e0 = 1.25;
    s.ei = 20.0;
  }
  return s;
}

QuantizedCircuit quantize(const CircuitSpec &spec) {
  spec.validate();
  const Eigen::Index n = spec.k + 1;
  QuantizedCircuit q;
  q.spec = spec;
  q.capacitance = Eigen::MatrixXd::Zero(n, n);
  q.capacitance(0, 0) = spec.c0 + spec.k * spec.cx;
  for (Eigen::Index i = 1; i < n; ++i) {
    q.capacitance(0, i) = q.capacitance(i, 0) = -spec.cx;
    q.capacitance(i, i) = spec.ci + spec.cx;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(q.capacitance);
  if (llt.info() != Eigen::Success) throw ConfigError("capacitance matrix is singular or not positive definite");
  q.inverse = llt.solve(Eigen::MatrixXd::Identity(n, n));
  q.inverse_defect = (q.capacitance * q.inverse - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();

  q.impedance.resize(n);
  q.levels.resize(n, kFockLevels);
  q.anharmonicity.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double e = i == 0 ? spec.e0 : spec.ei;
    double c = q.inverse(i, i);
    q.impedance[i] = std::sqrt(c / e);
    for (int m = 0; m < kFockLevels; ++m) q.levels(i, m) = m * std::sqrt(e * c) + c * m * (m - 1) / 16.0;
    q.anharmonicity[i] = (q.levels(i, 2) - q.levels(i, 1)) - (q.levels(i, 1) - q.levels(i, 0));
  }
  q.target_node = spec.kind == GateKind::kToffoli ? 0 : 1;
  q.control_node = spec.kind == GateKind::kToffoli ? 1 : 0;
  q.delta_3t1c_2t2c = pair_detuning(q, 3, 1, 2, 2);
  q.delta_1t1c_2t0c = pair_detuning(q, 1, 1, 2, 0);
  q.delta_1t0c_0t1c = pair_detuning(q, 1, 0, 0, 1);
  q.b1 = q.inverse(0, 1) / std::sqrt(q.impedance[0] * q.impedance[1]);
  q.b2 = n > 2 ? q.inverse(1, 2) / std::sqrt(q.impedance[1] * q.impedance[2]) : 0.0;
  return q;
}

nlohmann::json QuantizedCircuit::to_json() const {
  auto mat = [](const Eigen::MatrixXd &m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
      rows.push_back(row);
    }
    return rows;
  };
  auto vec = [](const Eigen::VectorXd &v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  return {{"schema", "darkgate.circuit/1"},
          {"units", "capacitance pF; E ns^-1; frequencies and couplings in the same numbers as sqrt(E / C)"},
          {"spec",
           {{"kind", to_string(spec.kind)},
            {"k", spec.k},
            {"C_0", spec.c0},
            {"C_i", spec.ci},
            {"C_x", spec.cx},
            {"E_0", spec.e0},
            {"E_i", spec.ei}}},
          {"capacitance", mat(capacitance)},
          {"inverse_capacitance", mat(inverse)},
          {"inverse_defect", inverse_defect},
          {"impedance", vec(impedance)},
          {"levels", mat(levels)},
          {"anharmonicity", vec(anharmonicity)},
          {"target_node", target_node},
          {"control_node", control_node},
          {"delta_3t1c_2t2c", delta_3t1c_2t2c},
          {"delta_1t1c_2t0c", delta_1t1c_2t0c},
          {"delta_1t0c_0t1c", delta_1t0c_0t1c},
          {"B1", b1},
          {"B2", b2},
          {"B2_over_B1", b1 != 0.0 ? b2 / b1 : 0.0}};
}

double tune_degeneracy(const CircuitSpec &spec) {
  spec.validate();
  auto f = [&](double c0) {
    CircuitSpec s = spec;
    s.c0 = c0;
    return quantize(s).delta_3t1c_2t2c;
  };
  const int steps = 600;
  const double lo = std::log(spec.c0 * 1e-3), hi = std::log(spec.c0 * 1e3);
  double best = 0.0, best_dist = INFINITY;
  double a = std::exp(lo), fa = f(a);
  for (int i = 1; i <= steps; ++i) {
    double b = std::exp(lo + (hi - lo) * i / steps), fb = f(b);
    if (fa == 0.0 || fa * fb < 0.0) {
      double root = a;
      if (fa != 0.0) {
        std::uintmax_t iters = 200;
        auto bracket = boost::math::tools::toms748_solve(f, a, b, fa, fb,
                                                         boost::math::tools::eps_tolerance<double>(50), iters);
        root = 0.5 * (bracket.first + bracket.second);
      }
      double dist = std::abs(std::log(root / spec.c0));
      if (dist < best_dist) {
        best_dist = dist;
        best = root;
      }
    }
    a = b;
    fa = fb;
  }
  if (!std::isfinite(best_dist)) throw ConfigError("no degenerate C_0 found within three decades of the given value");
  return best;
}

void SCGateParams::validate() const {
  if (k < 1) throw ConfigError("superconducting gate needs k >= 1");
  require_positive(b1, "B1");
  require_finite(b2, "B2");
  if (b2 < 0.0) throw ConfigError("B2 must be non-negative");
  require_positive(omega_c, "Omega_c");
  require_positive(omega_t, "Omega_t");
  require_finite(gamma, "gamma");
  if (gamma < 0.0) throw ConfigError("gamma must be non-negative");
  require_positive(std::abs(delta_1t1c_2t0c), "|delta_1t1c_2t0c|");
  require_positive(std::abs(delta_1t0c_0t1c), "|delta_1t0c_0t1c|");
  require_positive(alpha_t, "alpha_t");
  require_positive(alpha_c, "alpha_c");
}

SCGateParams sc_example_params(GateKind kind, int k) {
  SCGateParams p;
  p.kind = kind;
  p.k = k;
  p.gamma = khz(5.7);
  if (kind == GateKind::kToffoli) {
    p.b1 = mhz(16.0);
    p.b2 = 2.7e-4 * p.b1;
    p.omega_c = mhz(48.0);
    p.omega_t = 0.5 * p.b1;
    p.delta_1t1c_2t0c = ghz(3.2);
    p.delta_1t0c_0t1c = ghz(2.2);
    p.alpha_t = ghz(0.87);
    p.alpha_c = ghz(4.0);
  } else {
    p.b1 = mhz(12.6);
    p.b2 = 8.5e-4 * p.b1;
    p.omega_c = mhz(160.0);
    p.omega_t = 2.0 * p.b1;
    p.delta_1t1c_2t0c = ghz(18.6);
    p.delta_1t0c_0t1c = ghz(5.4);
    p.alpha_t = ghz(4.0);
    p.alpha_c = ghz(13.4);
  }
  return p;
}

ErrorBudget sc_error_budget(const SCGateParams &p) {
  p.validate();
  const double k = p.k;
  const double pi_c = kTwoPi / p.omega_c;
  const double target_time = 2.0 * kTwoPi / p.omega_c + kTwoPi / p.omega_t;
  const bool toffoli = p.kind == GateKind::kToffoli;
  ErrorBudget b;
  b.variant = toffoli ? "sc-toffoli" : "sc-fanout";
  double dis = toffoli ? k / 2.0 * pi_c * p.gamma + 0.5 * target_time * p.gamma
                       : 0.5 * pi_c * p.gamma + k / 2.0 * target_time * p.gamma;
  double rot = toffoli ? k * sq(p.omega_c / p.alpha_c) + sq(p.omega_t / p.alpha_t)
                       : sq(p.omega_c / p.alpha_c) + k * sq(p.omega_t / p.alpha_t);
  // 2^-k sum_{j <= k/2} C(k, j) j, doubled.
  double weight = 0.0, c = 1.0;
  for (int j = 0; j <= p.k / 2; ++j) {
    weight += c * j;
    c = c * (p.k - j) / (j + 1);
  }
  weight = 2.0 * std::ldexp(weight, -p.k);
  double ex1 = weight * sq(toffoli ? pi_c : target_time) * sq(p.b2);
  double ex2 = 0.5 * (sq(p.b1 / p.delta_1t1c_2t0c) + sq(p.b1 / p.delta_1t0c_0t1c));
  double x4 = std::pow(p.omega_t / p.b1, 4);
  double adi = 0.5 * binomial_average(p.k, 1, [&](int j) { return x4 / (640.0 * j * j); });
  b.terms = {{"dis", dis}, {"rot", rot}, {"ex1", ex1}, {"ex2", ex2}, {"adi", adi}};
  b.parameters = {{"k", k},
                  {"B1_MHz", to_mhz(p.b1)},
                  {"B2_MHz", to_mhz(p.b2)},
                  {"Omega_c_MHz", to_mhz(p.omega_c)},
                  {"Omega_t_MHz", to_mhz(p.omega_t)},
                  {"gamma_per_s", p.gamma}};
  return b;
}

SCModel sc_build_model(const SCGateParams &p, const SCModelOptions &options) {
  p.validate();
  SCModel m;
  m.kind = p.kind;
  m.k = p.k;
  m.basis = std::make_shared<const ProductBasis>(fock_atoms(p.k));
  m.pulse = make_pulse(p.omega_t);
  const ProductBasis &b = *m.basis;
  const std::size_t dim = b.dimension();
  const bool toffoli = p.kind == GateKind::kToffoli;
  const double b1 = options.fock_enhancement ? std::sqrt(6.0) * p.b1 : p.b1;
  OperatorBuilder ex1(dim), ex2(dim), drive(dim);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    for (std::size_t a = 0; a < b.num_atoms(); ++a) {
      bool driven = toffoli ? a == 0 : a > 0;
      if (driven && b.level_of(idx, a) == 1) drive.add_pair(idx, b.with_level(idx, a, 2), 0.5);
    }
    for (std::size_t i = 1; i < b.num_atoms(); ++i) {
      std::size_t t = toffoli ? 0 : i, c = toffoli ? i : 0;
      if (b.level_of(idx, t) == 2 && b.level_of(idx, c) == 2) {
        ex1.add_pair(idx, b.with_level(b.with_level(idx, t, 3), c, 1), b1);
      }
    }
    if (!options.include_b2) continue;
    for (std::size_t i = 1; i < b.num_atoms(); ++i) {
      for (std::size_t j = i + 1; j < b.num_atoms(); ++j) {
        int ni = b.level_of(idx, i), nj = b.level_of(idx, j);
        // |n, n+1> <-> |n+1, n>; the reverse ordering is the conjugate element.
        if (nj == ni + 1) {
          double f = options.fock_enhancement ? nj : 1.0;
          ex2.add_pair(idx, b.with_level(b.with_level(idx, i, nj), j, ni), f * p.b2);
        }
      }
    }
  }
  m.exchange_b1 = ex1.build();
  m.exchange_b2 = ex2.build();
  m.drive = drive.build();
  return m;
}

OperatorMatrix sc_build_hamiltonian(const SCGateParams &p, double omega, const SCModelOptions &options) {
  SCModel m = sc_build_model(p, options);
  SparseMatrix h = m.exchange_b1 + m.exchange_b2 + m.drive * Complex(omega);
  return OperatorMatrix(m.basis, std::move(h), true);
}

StateVector sc_dark_initial_state(const SCModel &model, int j) {
  if (j < 1 || j > model.k) throw ConfigError("dark configuration needs 1 <= j <= k");
  const bool toffoli = model.kind == GateKind::kToffoli;
  std::vector<int> levels(static_cast<std::size_t>(model.k) + 1);
  levels[0] = toffoli ? 1 : 2;
  for (int i = 1; i <= model.k; ++i) levels[static_cast<std::size_t>(i)] = i <= j ? (toffoli ? 2 : 1) : 0;
  return StateVector::basis_state(model.basis, model.basis->index(levels));
}

SCTrackResult sc_evolve_and_track(const SCGateParams &p, int j, const SCModelOptions &options, double tol, int nodes) {
  if (nodes < 3) throw ConfigError("need at least 3 output nodes");
  if (nodes % 2 == 0) ++nodes;
  SCModel m = sc_build_model(p, options);
  StateVector init = sc_dark_initial_state(m, j);
  TimeDependentHamiltonian h(m.basis->dimension());
  h.add(m.exchange_b1);
  if (options.include_b2) h.add(m.exchange_b2);
  PulseSpec pulse = m.pulse;
  h.add(m.drive, [pulse](double t) { return pulse.amplitude(t); });
  EvolveOptions eo;
  eo.tol = tol;
  eo.nodes = uniform_nodes(0.0, pulse.duration, nodes);
  SCTrackResult r;
  r.trajectory = evolve(init, h, 0.0, pulse.duration, eo);
  NullSpaceTracker tracker(m.basis, m.exchange_b1, m.drive, pulse, init);
  r.infidelity = dark_state_infidelity(r.trajectory, std::ref(tracker));
  const StateVector &last = r.trajectory.states.back();
  r.final_bright_population =
      std::max(0.0, 1.0 - std::norm(inner_product(init, last)) / last.amplitudes().squaredNorm());
  const StateVector &mid = r.trajectory.states[static_cast<std::size_t>(nodes / 2)];
  double p0 = std::norm(inner_product(init, mid)) / mid.amplitudes().squaredNorm();
  r.theta_mid = std::atan(std::sqrt(std::max(0.0, 1.0 - p0) / p0));
  double b1 = options.fock_enhancement ? std::sqrt(6.0) * p.b1 : p.b1;
  r.theta_mid_closed_form = std::atan(pulse.amplitude(0.5 * pulse.duration) / (2.0 * std::sqrt(j) * b1));
  return r;
}

}  // namespace darkgate
