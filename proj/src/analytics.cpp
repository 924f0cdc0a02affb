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

#include "darkgate/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>

#include "darkgate/errors.hpp"
#include "darkgate/pulse.hpp"

namespace darkgate {

namespace {

double sq(double v) { return v * v; }

// Denominator with the shift taken in the direction that shrinks |delta|.
double worst_shift(double delta, double shift) { return std::abs(delta) - std::abs(shift); }

double rotation_term(double omega, double detuning) {
  if (detuning <= 0.0) return std::numeric_limits<double>::infinity();
  return sq(omega) / (4.0 * sq(detuning));
}

void require_positive(double v, const char *what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(what) + " must be positive and finite");
}

void validate(const GateParams &p) {
  if (p.k < 1) throw ConfigError("qubit count k must be at least 1");
  require_positive(p.omega_t, "target Rabi frequency");
  require_positive(p.omega_c, "control Rabi frequency");
  require_positive(p.b1, "B1");
  require_positive(p.delta_c, "control level spacing");
  require_positive(p.delta_t, "target level spacing");
  if (p.decay_rate < 0.0 || p.b2 < 0.0 || p.d < 0.0) throw ConfigError("rates must be non-negative");
}

void echo(ErrorBudget &b, const GateParams &p) {
  b.parameters = {{"k", p.k},
                  {"omega_t_2pi_MHz", to_mhz(p.omega_t)},
                  {"omega_c_2pi_MHz", to_mhz(p.omega_c)},
                  {"B1_2pi_MHz", to_mhz(p.b1)},
                  {"B2_2pi_MHz", to_mhz(p.b2)},
                  {"D_2pi_MHz", to_mhz(p.d)},
                  {"delta_c_2pi_GHz", to_ghz(p.delta_c)},
                  {"delta_t_2pi_GHz", to_ghz(p.delta_t)},
                  {"decay_rate_per_s", p.decay_rate},
                  {"r_um", p.r}};
}

double fanout_exchange_rate(double omega_t, double b1, double b2, int j) {
  if (j <= 2) return 0.0;
  double x = omega_t / (2.0 * b1);
  return 0.5 * j * (j - 1) * (j - 2) * std::pow(x, 6) * b2;
}

}  // namespace

DarkStateToffoli toffoli_dark_state(double omega_t, double b1, int j) {
  if (j < 1) throw ConfigError("Toffoli dark state needs j >= 1 excited controls");
  if (b1 == 0.0) throw ConfigError("B1 must be non-zero");
  DarkStateToffoli d;
  d.j = j;
  d.theta = std::atan(omega_t / (2.0 * std::sqrt(static_cast<double>(j)) * std::abs(b1)));
  d.amplitudes = {std::cos(d.theta), -std::sin(d.theta)};
  return d;
}

DarkStateFanout fanout_dark_state(double omega_t, double b1, int j) {
  if (j < 1) throw ConfigError("fan-out dark state needs j >= 1 targets");
  if (b1 == 0.0) throw ConfigError("B1 must be non-zero");
  DarkStateFanout d;
  d.j = j;
  d.x = omega_t / (2.0 * std::abs(b1));
  d.tan_theta.assign(static_cast<std::size_t>(j) + 1, 1.0);
  d.cumulative_tan.assign(static_cast<std::size_t>(j) + 1, 1.0);
  for (int m = 1; m <= j; ++m) {
    double t = d.x * std::sqrt(static_cast<double>(j - m + 1));
    if (m % 2 == 0) t *= std::sqrt(static_cast<double>(m - 1) / m);
    d.tan_theta[m] = t;
    d.cumulative_tan[m] = d.cumulative_tan[m - 1] * t;
  }
  double norm2 = 0.0;
  for (double c : d.cumulative_tan) {
    d.probabilities.push_back(c * c);
    norm2 += c * c;
  }
  double inv = 1.0 / std::sqrt(norm2);
  for (int m = 0; m <= j; ++m) d.amplitudes.push_back((m % 2 ? -1.0 : 1.0) * d.cumulative_tan[m] * inv);
  return d;
}

DarkStateFanout fanout_dark_state_exact(double omega_t, double b1, int j) {
  if (j < 1) throw ConfigError("fan-out dark state needs j >= 1 targets");
  if (b1 == 0.0) throw ConfigError("B1 must be non-zero");
  const double x = omega_t / (2.0 * std::abs(b1));
  // Ladder column m: even -> S_r(m), odd -> S_a(m-1). Rows: S_r(odd), S_a(odd).
  auto col_r = [](int m) { return m; };       // S_r(m), m even
  auto col_a = [](int m) { return m + 1; };   // S_a(m), m even
  std::vector<std::pair<char, int>> rows;
  for (int m = 1; m <= j; m += 2) rows.emplace_back('r', m);
  for (int m = 1; m <= j - 1; m += 2) rows.emplace_back('a', m);
  Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), j + 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto [type, m] = rows[i];
    auto row = static_cast<Eigen::Index>(i);
    if (type == 'r') {
      mat(row, col_r(m - 1)) += std::sqrt(static_cast<double>(m) * (j - m + 1)) * x;
      if (m + 1 <= j) mat(row, col_r(m + 1)) += std::sqrt(static_cast<double>(m + 1) * (j - m)) * x;
      mat(row, col_a(m - 1)) += std::sqrt(static_cast<double>(m));
    } else {
      mat(row, col_a(m - 1)) += std::sqrt(static_cast<double>(m) * (j - m)) * x;
      if (m + 1 <= j - 1) mat(row, col_a(m + 1)) += std::sqrt(static_cast<double>(m + 1) * (j - 1 - m)) * x;
      if (m + 1 <= j) mat(row, col_r(m + 1)) += std::sqrt(static_cast<double>(m + 1));
    }
  }
  Eigen::VectorXd v;
  if (rows.empty()) {
    v = Eigen::VectorXd::Unit(j + 1, 0);
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(mat, Eigen::ComputeFullV);
    v = svd.matrixV().col(j);
  }
  if (v[0] < 0) v = -v;
  v.normalize();
  DarkStateFanout d;
  d.j = j;
  d.x = x;
  d.tan_theta.assign(static_cast<std::size_t>(j) + 1, 1.0);
  d.cumulative_tan.assign(static_cast<std::size_t>(j) + 1, 1.0);
  for (int m = 0; m <= j; ++m) {
    d.amplitudes.push_back(v[m]);
    d.probabilities.push_back(v[m] * v[m]);
    if (m > 0) {
      d.cumulative_tan[m] = std::abs(v[m] / v[0]);
      d.tan_theta[m] = v[m - 1] != 0.0 ? std::abs(v[m] / v[m - 1]) : 0.0;
    }
  }
  return d;
}

GateParams gate_params(GateKind kind, int k, const RydbergScheme &scheme, double r, double omega_t, double omega_c,
                       double decay_rate) {
  GateParams p;
  p.kind = kind;
  p.k = k;
  p.r = r;
  p.omega_t = omega_t;
  p.omega_c = omega_c;
  p.b1 = std::abs(dipolar_coupling(scheme.c3_b1, r));
  p.b2 = std::abs(dipolar_coupling(scheme.c3_b2, r));
  p.d = std::abs(vdw_coupling(scheme.c6_mm, r));
  p.delta_c = scheme.delta_control(kind);
  p.delta_t = scheme.delta_target(kind);
  p.decay_rate = decay_rate;
  return p;
}

GateParams gate_params(const SystemConfig &c) {
  return gate_params(c.kind, c.k, c.scheme, c.lattice_constant, resolve_omega_t(c), c.omega_c, c.decay_rate);
}

double ErrorBudget::total() const {
  double s = 0.0;
  for (const auto &t : terms) s += t.value;
  return s;
}

bool ErrorBudget::has_term(const std::string &name) const {
  for (const auto &t : terms) {
    if (t.name == name) return true;
  }
  for (const auto &t : diagnostics) {
    if (t.name == name) return true;
  }
  return false;
}

double ErrorBudget::term(const std::string &name) const {
  for (const auto &t : terms) {
    if (t.name == name) return t.value;
  }
  for (const auto &t : diagnostics) {
    if (t.name == name) return t.value;
  }
  throw ConfigError("budget has no term '" + name + "'");
}

nlohmann::json ErrorBudget::to_json() const {
  auto list = [](const std::vector<ErrorTerm> &v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto &t : v) a.push_back({{"name", t.name}, {"value", t.value}});
    return a;
  };
  nlohmann::json params = nlohmann::json::array();
  for (const auto &[k, v] : parameters) params.push_back({{"name", k}, {"value", v}});
  return {{"variant", variant},
          {"terms", list(terms)},
          {"total", total()},
          {"diagnostics", list(diagnostics)},
          {"parameters", params}};
}

double exchange_perturbation(GateKind kind, double omega_t, double b1, double b2, int j) {
  if (kind == GateKind::kToffoli) {
    if (j <= 1) return 0.0;
    return kPi * omega_t * b2 / (4.0 * j * b1 * b1 + omega_t * omega_t);
  }
  // The quoted fan-out estimate is a rate; the pulse duration converts it.
  if (j <= 2 || omega_t <= 0.0) return 0.0;
  return fanout_exchange_rate(omega_t, b1, b2, j) * make_pulse(omega_t).duration;
}

ErrorBudget toffoli_error_budget(const GateParams &p) {
  validate(p);
  const int k = p.k;
  const double ot = p.omega_t, oc = p.omega_c, g = p.decay_rate;
  ErrorBudget b;
  b.variant = "toffoli-dark";
  double se_t = kTwoPi * g / ot *
                (std::ldexp(1.0, -(k + 1)) +
                 0.5 * binomial_average(k, 1, [&](int j) { return sq(ot) / (4.0 * j * sq(p.b1)); }));
  double se_c = (kTwoPi / oc + 2.0 * kTwoPi / ot) * k * g / 2.0;
  double r1 = (static_cast<double>(k) * k * k - k) / 8.0 * sq(p.d) / sq(oc);
  double r2_c = 0.5 * binomial_average(k, 1, [&](int j) { return rotation_term(oc, worst_shift(p.delta_c, (j - 1) * p.d)); });
  double r2_t = sq(ot) / (8.0 * sq(p.delta_t));
  double adi = 0.5 * binomial_average(k, 1, [&](int j) { return std::pow(ot, 4) / (640.0 * std::pow(p.b1, 4) * j * j); });
  b.terms = {{"se_t", se_t}, {"se_c", se_c}, {"r1", r1}, {"r2_c", r2_c}, {"r2_t", r2_t}, {"adi", adi}};
  double ex = 0.5 * binomial_average(k, 2, [&](int j) { return exchange_perturbation(GateKind::kToffoli, ot, p.b1, p.b2, j); });
  b.diagnostics = {{"exchange_perturbation", ex}};
  echo(b, p);
  return b;
}

ErrorBudget fanout_error_budget(const GateParams &p) {
  validate(p);
  const int k = p.k;
  const double ot = p.omega_t, oc = p.omega_c, g = p.decay_rate;
  ErrorBudget b;
  b.variant = "fanout-dark";
  double se_c = 0.5 * (kTwoPi / oc + 2.0 * kTwoPi / ot) * g;
  double se_t = kTwoPi * g / ot * 0.5 *
                binomial_average(k, 1, [&](int j) { return j + j * sq(ot) / (4.0 * sq(p.b1)); });
  double r1 = (static_cast<double>(k) * k * k - k) / 16.0 * sq(p.d) / sq(ot);
  double adi = k * std::pow(ot, 4) / (2560.0 * std::pow(p.b1, 4));
  double r2_c = rotation_term(oc, p.delta_c);
  double r2_t = 0.5 * binomial_average(k, 1, [&](int j) {
    return j * rotation_term(ot, worst_shift(p.delta_t, (j - 1) * p.d)) + j * rotation_term(ot, p.delta_t);
  });
  b.terms = {{"se_c", se_c}, {"se_t", se_t}, {"r1", r1}, {"r2_c", r2_c}, {"r2_t", r2_t}, {"adi", adi}};
  double ex = 0.0;
  if (k >= 3) {
    double duration = make_pulse(ot).duration;
    ex = 0.5 * binomial_average(k, 3, [&](int j) { return fanout_exchange_rate(ot, p.b1, p.b2, j) * duration; });
  }
  b.diagnostics = {{"exchange_perturbation", ex}};
  echo(b, p);
  return b;
}

ErrorBudget dark_error_budget(const GateParams &p) {
  return p.kind == GateKind::kToffoli ? toffoli_error_budget(p) : fanout_error_budget(p);
}

ErrorBudget blockade_error_budget(const GateParams &p, double b_ct) {
  ErrorBudget dark = dark_error_budget(p);
  const int k = p.k;
  const double ot = p.omega_t;
  b_ct = std::abs(b_ct);
  ErrorBudget b;
  b.variant = p.kind == GateKind::kToffoli ? "toffoli-blockade" : "fanout-blockade";
  for (const auto &t : dark.terms) {
    if (t.name == "adi" || t.name == "r2_t") continue;
    b.terms.push_back(t);
  }
  double r2_t, r3;
  if (p.kind == GateKind::kToffoli) {
    r2_t = 0.5 * binomial_average(k, 1, [&](int j) { return rotation_term(ot, worst_shift(p.delta_t, j * b_ct)); }) +
           std::ldexp(1.0, -(k + 1)) * rotation_term(ot, p.delta_t);
    r3 = 0.5 * binomial_average(k, 1, [&](int j) { return sq(ot) / (4.0 * j * j * sq(p.b1)); });
  } else {
    r2_t = 0.5 * binomial_average(k, 1, [&](int j) {
      return j * rotation_term(ot, worst_shift(p.delta_t, (j - 1) * p.d)) +
             j * rotation_term(ot, worst_shift(p.delta_t, b_ct));
    });
    r3 = 0.5 * binomial_average(k, 1, [&](int j) { return j * sq(ot) / (4.0 * sq(p.b1)); });
  }
  b.terms.push_back({"r2_t", r2_t});
  b.terms.push_back({"r3", r3});
  b.parameters = dark.parameters;
  b.parameters.emplace_back("B_ct_2pi_MHz", to_mhz(b_ct));
  return b;
}

ErrorBudget lattice_error_budget(const SystemConfig &config, const LatticeConfig &lattice,
                                 RotationDrive toffoli_r1_drive) {
  const int k = config.k;
  if (lattice.positions.size() != static_cast<std::size_t>(k) + 1) {
    throw ConfigError("lattice positions do not match k + 1 atoms");
  }
  if (k > 30) throw ConfigError("lattice budget enumerates 2^(k+1) inputs; k must be at most 30");
  GateParams p = gate_params(config);
  ErrorBudget closed = dark_error_budget(p);
  const double ot = p.omega_t, oc = p.omega_c;
  // Pairwise multi-multi shifts.
  std::vector<std::vector<double>> dmat(static_cast<std::size_t>(k), std::vector<double>(static_cast<std::size_t>(k), 0.0));
  for (int a = 0; a < k; ++a) {
    for (int c = 0; c < k; ++c) {
      if (a != c) dmat[a][c] = vdw_coupling(config.scheme.c6_mm, lattice.distance(a + 1, c + 1));
    }
  }
  const bool toffoli = config.kind == GateKind::kToffoli;
  const double r1_omega = toffoli ? (toffoli_r1_drive == RotationDrive::kControl ? oc : ot) : ot;
  double r1_sum = 0.0, r2_sum = 0.0;
  const std::uint64_t multi_inputs = std::uint64_t{1} << k;
  std::vector<int> excited;
  for (std::uint64_t mask = 0; mask < multi_inputs; ++mask) {
    // Toffoli: controls in 0 are excited. Fan-out: targets in 1 are driven.
    excited.clear();
    for (int a = 0; a < k; ++a) {
      bool bit = (mask >> a) & 1U;
      if (toffoli ? !bit : bit) excited.push_back(a);
    }
    double r1_q = 0.0, r2_q_shifted = 0.0, r2_q_plain = 0.0;
    for (int l : excited) {
      double delta_l = 0.0;
      for (int m : excited) {
        if (m != l) delta_l += dmat[l][m];
      }
      r1_q += sq(delta_l / r1_omega);
      if (toffoli) {
        r2_q_shifted += rotation_term(oc, worst_shift(p.delta_c, delta_l));
      } else {
        r2_q_shifted += rotation_term(ot, worst_shift(p.delta_t, delta_l));
        r2_q_plain += rotation_term(ot, p.delta_t);
      }
    }
    // Sum over the single qubit's two states.
    if (toffoli) {
      r1_sum += 2.0 * r1_q;
      r2_sum += 2.0 * r2_q_shifted + rotation_term(ot, p.delta_t);
    } else {
      // Control in 1: targets rotate freely. Control in 0: dark-state branch.
      r1_sum += r1_q;
      r2_sum += r2_q_shifted + r2_q_plain;
    }
  }
  const double norm = std::ldexp(1.0, -(k + 1));
  ErrorBudget b;
  b.variant = toffoli ? "toffoli-lattice" : "fanout-lattice";
  for (const auto &t : closed.terms) {
    if (t.name == "se_t" || t.name == "se_c" || t.name == "adi") b.terms.push_back(t);
  }
  b.terms.push_back({"r1", r1_sum * norm});
  if (toffoli) {
    b.terms.push_back({"r2", r2_sum * norm});
  } else {
    b.terms.push_back({"r2_c", closed.term("r2_c")});
    b.terms.push_back({"r2", r2_sum * norm});
  }
  b.diagnostics = closed.diagnostics;
  b.parameters = closed.parameters;
  b.parameters.emplace_back("geometry_square", lattice.geometry == Geometry::kSquare ? 1.0 : 0.0);
  return b;
}

double nonadiabatic_estimate(GateKind kind, double omega_t, double b1, int j, bool envelope) {
  if (b1 == 0.0) throw ConfigError("B1 must be non-zero");
  double ratio4 = std::pow(omega_t / b1, 4);
  double v = kind == GateKind::kToffoli ? ratio4 / (640.0 * kPi * j * j) : j * ratio4 / (640.0 * kPi);
  return envelope ? 3.0 * v : v;
}

OptimizationBounds default_bounds(GateKind kind) {
  OptimizationBounds b;
  if (kind == GateKind::kToffoli) {
    b.omega_t_min = khz(16.0);
    b.omega_t_max = mhz(8.0);
  } else {
    b.omega_t_min = mhz(1.0);
    b.omega_t_max = mhz(8.0);
  }
  return b;
}

OptimizationResult optimize_parameters(GateKind kind, int k, const RydbergScheme &scheme,
                                       const OptimizationBounds &bounds_in) {
  OptimizationBounds bounds = bounds_in;
  if (bounds.omega_t_min <= 0.0 || bounds.omega_t_max <= 0.0) {
    auto d = default_bounds(kind);
    if (bounds.omega_t_min <= 0.0) bounds.omega_t_min = d.omega_t_min;
    if (bounds.omega_t_max <= 0.0) bounds.omega_t_max = d.omega_t_max;
  }
  if (k < 1) throw ConfigError("qubit count k must be at least 1");
  if (!(bounds.r_min > 0.0) || bounds.r_max < bounds.r_min || !(bounds.r_step > 0.0)) {
    throw ConfigError("invalid lattice-constant bounds");
  }
  if (bounds.omega_c_max < bounds.omega_c_min || !(bounds.omega_c_min > 0.0)) {
    throw ConfigError("invalid control Rabi bounds");
  }
  if (bounds.omega_t_over_b1_max > 0.42 + 1e-12) {
    throw ConfigError("Omega_t/B1 upper bound must not exceed 0.42");
  }
  auto evaluate = [&](const GateParams &p) {
    return bounds.variant == BudgetVariant::kDark ? dark_error_budget(p) : blockade_error_budget(p, p.b1);
  };
  std::vector<double> radii{bounds.r_min};
  for (long m = static_cast<long>(std::ceil(bounds.r_min / bounds.r_step)); m * bounds.r_step <= bounds.r_max + 1e-12; ++m) {
    double r = m * bounds.r_step;
    if (r > bounds.r_min + 1e-12) radii.push_back(r);
  }
  const int bits = std::numeric_limits<double>::digits / 2;
  double best = std::numeric_limits<double>::infinity();
  GateParams best_params;
  for (double r : radii) {
    GateParams p = gate_params(kind, k, scheme, r, bounds.omega_t_min, bounds.omega_c_min, bounds.decay_rate);
    double hi = std::min(bounds.omega_t_max, bounds.omega_t_over_b1_max * p.b1);
    double lo = bounds.omega_t_min;
    if (hi < lo) continue;
    // The total separates into f(Omega_t) + g(Omega_c), each convex.
    auto f = [&](double ot) {
      GateParams q = p;
      q.omega_t = ot;
      return evaluate(q).total();
    };
    double ot = lo;
    if (hi > lo) {
      auto res = boost::math::tools::brent_find_minima(f, lo, hi, bits);
      ot = res.first;
      if (f(lo) <= res.second) ot = lo;
      if (f(hi) < f(ot)) ot = hi;
    }
    p.omega_t = ot;
    double oc = bounds.omega_c_min;
    if (bounds.omega_c_max > bounds.omega_c_min) {
      auto g = [&](double w) {
        GateParams q = p;
        q.omega_c = w;
        return evaluate(q).total();
      };
      auto res = boost::math::tools::brent_find_minima(g, bounds.omega_c_min, bounds.omega_c_max, bits);
      oc = res.first;
      if (g(bounds.omega_c_min) <= res.second) oc = bounds.omega_c_min;
      if (g(bounds.omega_c_max) < g(oc)) oc = bounds.omega_c_max;
    }
    p.omega_c = oc;
    double total = evaluate(p).total();
    if (total < best) {
      best = total;
      best_params = p;
    }
  }
  if (!std::isfinite(best)) throw ConfigError("empty feasible set: no lattice constant admits a target Rabi frequency");
  return {best_params, evaluate(best_params)};
}

}  // namespace darkgate
