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

#include "darkgate/integrator.hpp"

#include <algorithm>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "darkgate/errors.hpp"

namespace darkgate {

namespace odeint = boost::numeric::odeint;
using State = std::vector<Complex>;

void TimeDependentHamiltonian::add(SparseMatrix matrix, std::function<double(double)> coefficient) {
  if (static_cast<std::size_t>(matrix.rows()) != dimension_ || matrix.rows() != matrix.cols()) {
    throw ConfigError("Hamiltonian term has the wrong shape");
  }
  terms_.push_back({std::move(matrix), std::move(coefficient)});
}

void TimeDependentHamiltonian::apply(double t, const Complex *x, Complex *y) const {
  const auto n = static_cast<Eigen::Index>(dimension_);
  Eigen::Map<const Vector> xv(x, n);
  Eigen::Map<Vector> yv(y, n);
  yv.setZero();
  for (const auto &term : terms_) {
    double c = term.coefficient ? term.coefficient(t) : 1.0;
    if (c == 0.0) continue;
    yv.noalias() += c * (term.matrix * xv);
  }
}

SparseMatrix TimeDependentHamiltonian::at(double t) const {
  const auto n = static_cast<std::ptrdiff_t>(dimension_);
  SparseMatrix out(n, n);
  for (const auto &term : terms_) {
    double c = term.coefficient ? term.coefficient(t) : 1.0;
    if (c != 0.0) out += term.matrix * Complex(c);
  }
  return out;
}

TimeDependentHamiltonian TimeDependentHamiltonian::restricted(std::span<const std::size_t> indices) const {
  TimeDependentHamiltonian out(indices.size());
  for (const auto &term : terms_) out.add(restrict_to(term.matrix, indices), term.coefficient);
  return out;
}

std::vector<double> uniform_nodes(double t0, double t1, int n) {
  if (n < 2) return {t1};
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = t0 + (t1 - t0) * i / (n - 1);
  out.back() = t1;
  return out;
}

Trajectory evolve(const StateVector &psi0, const TimeDependentHamiltonian &h, double t0, double t1,
                  const EvolveOptions &options) {
  if (static_cast<std::size_t>(psi0.amplitudes().size()) != h.dimension()) {
    throw ConfigError("initial state and Hamiltonian dimensions differ");
  }
  if (std::abs(psi0.norm() - 1.0) > 1e-8) throw ConfigError("initial state must be normalized");
  if (!(t1 >= t0)) throw ConfigError("evolution end time precedes start time");
  if (!(options.tol > 0.0)) throw ConfigError("integrator tolerance must be positive");

  std::vector<double> nodes = options.nodes;
  std::sort(nodes.begin(), nodes.end());
  for (double t : nodes) {
    if (t < t0 - 1e-15 * std::abs(t1) || t > t1 + 1e-15 * std::abs(t1)) throw ConfigError("output node outside the evolution interval");
  }
  if (nodes.empty() || nodes.back() < t1) nodes.push_back(t1);

  // Confine to the reachable subspace.
  std::vector<std::size_t> sub;
  if (options.restrict_subspace) {
    std::vector<std::size_t> seeds;
    for (std::size_t i = 0; i < h.dimension(); ++i) {
      if (psi0[i] != Complex(0.0)) seeds.push_back(i);
    }
    std::vector<const SparseMatrix *> parts;
    for (const auto &term : h.terms()) parts.push_back(&term.matrix);
    sub = reachable_indices(parts, seeds);
  } else {
    sub.resize(h.dimension());
    for (std::size_t i = 0; i < sub.size(); ++i) sub[i] = i;
  }
  const bool full = sub.size() == h.dimension();
  TimeDependentHamiltonian hs = full ? h : h.restricted(sub);
  State x(sub.size());
  for (std::size_t i = 0; i < sub.size(); ++i) x[i] = psi0[sub[i]];

  Trajectory traj;
  traj.subspace_dimension = sub.size();
  auto record = [&](double t, const State &s) {
    Vector full_amp = Vector::Zero(static_cast<Eigen::Index>(h.dimension()));
    for (std::size_t i = 0; i < sub.size(); ++i) full_amp[static_cast<Eigen::Index>(sub[i])] = s[i];
    traj.times.push_back(t);
    traj.states.emplace_back(psi0.basis(), std::move(full_amp));
  };

  auto rhs = [&hs](const State &in, State &out, double t) {
    hs.apply(t, in.data(), out.data());
    for (auto &v : out) v = Complex(v.imag(), -v.real());  // -i * v
  };

  std::size_t next = 0;
  while (next < nodes.size() && nodes[next] <= t0) record(nodes[next++], x);
  if (t1 == t0 || next == nodes.size()) return traj;

  auto stepper = odeint::make_dense_output(options.tol, options.tol, odeint::runge_kutta_dopri5<State>());
  double dt0 = std::min((t1 - t0) / 100.0, 1e-3 * (t1 - t0) + 1e-12);
  stepper.initialize(x, t0, dt0);
  const double min_dt = 1e-15 * std::max(t1 - t0, std::abs(t1));
  State tmp(x.size());
  try {
    while (next < nodes.size()) {
      auto [ta, tb] = stepper.do_step(rhs);
      ++traj.steps;
      if (!(tb > ta) || stepper.current_time_step() < min_dt) {
        throw NumericalError("integrator step size underflow", stepper.current_time());
      }
      while (next < nodes.size() && nodes[next] <= tb) {
        stepper.calc_state(nodes[next], tmp);
        record(nodes[next], tmp);
        ++next;
      }
    }
  } catch (const odeint::step_adjustment_error &e) {
    throw NumericalError(std::string("integrator step adjustment failed: ") + e.what(), stepper.current_time());
  }
  return traj;
}

}  // namespace darkgate
