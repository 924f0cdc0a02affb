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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "darkgate/errors.hpp"
#include "darkgate/hamiltonian.hpp"
#include "darkgate/units.hpp"

namespace darkgate {
namespace {

constexpr double kPi = std::numbers::pi;

struct TwoLevel {
  GateModel model;
  std::size_t g1, r;
};

// Single target driven g1 <-> r with nothing else switched on.
TwoLevel two_level() {
  SystemConfig c;
  c.k = 1;
  c.omega_t = mhz(1.0);
  ModelOptions o;
  o.spectators = false;
  o.include_b1 = false;
  o.include_b2 = false;
  TwoLevel t{build_gate_model(c, place_atoms(1, Geometry::kSquare, 10.0), o), 0, 0};
  const auto &b = *t.model.basis;
  int g0 = b.atom(1).index_of("g0");
  t.g1 = b.index(std::vector<int>{b.atom(0).index_of("g1"), g0});
  t.r = b.index(std::vector<int>{b.atom(0).index_of("r"), g0});
  return t;
}

TEST(Evolve, ConstantRabiPiTransfer) {
  auto t = two_level();
  const double omega = mhz(2.0);
  TimeDependentHamiltonian h(t.model.basis->dimension());
  h.add(t.model.target_drive_bare, [omega](double) { return omega; });
  auto psi0 = StateVector::basis_state(t.model.basis, t.g1);
  EvolveOptions o;
  o.tol = 1e-11;
  auto out = evolve(psi0, h, 0.0, kPi / omega, o).states.back();
  EXPECT_NEAR(std::norm(out[t.r]), 1.0, 1e-9);
  auto full = evolve(psi0, h, 0.0, 2.0 * kPi / omega, o).states.back();
  EXPECT_NEAR(full[t.g1].real(), -1.0, 1e-9);
}

TEST(Evolve, GaussianTwoPiPulseReturnsWithSignFlip) {
  auto t = two_level();
  PulseSpec p = t.model.pulse;
  TimeDependentHamiltonian h(t.model.basis->dimension());
  h.add(t.model.target_drive_bare, [p](double s) { return p.amplitude(s); });
  EvolveOptions o;
  o.tol = 1e-11;
  o.nodes = uniform_nodes(0.0, p.duration, 11);
  auto traj = evolve(StateVector::basis_state(t.model.basis, t.g1), h, 0.0, p.duration, o);
  ASSERT_EQ(traj.times.size(), 11u);
  EXPECT_DOUBLE_EQ(traj.times.back(), p.duration);
  EXPECT_NEAR(traj.states.back()[t.g1].real(), -1.0, 1e-8);
  // Halfway through the area is pi: full transfer.
  EXPECT_NEAR(std::norm(traj.states[5][t.r]), 1.0, 1e-8);
}

TEST(Evolve, MatchesSpectralPropagator) {
  auto basis = build_basis(GateKind::kToffoli, 2, BasisOptions{.spectator = false});
  const auto n = static_cast<Eigen::Index>(basis->dimension());
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  DenseMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  DenseMatrix hd = 0.5 * (a + a.adjoint()) * 1e6;
  TimeDependentHamiltonian h(basis->dimension());
  h.add(hd.sparseView());
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = Complex(g(rng), g(rng));
  StateVector psi0 = StateVector(basis, v).normalized();
  const double t1 = 3e-6;
  EvolveOptions o;
  o.tol = 1e-12;
  auto out = evolve(psi0, h, 0.0, t1, o).states.back();
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(hd);
  Vector phase = (Complex(0.0, -t1) * es.eigenvalues().cast<Complex>()).array().exp();
  Vector expect = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint() * psi0.amplitudes();
  EXPECT_LT((out.amplitudes() - expect).norm(), 1e-8);
  EXPECT_NEAR(out.norm(), 1.0, 1e-9);
}

TEST(Evolve, RestrictionIsExact) {
  SystemConfig c;
  c.k = 2;
  c.omega_t_over_b1 = 0.3;
  auto m = build_gate_model(c, place_atoms(2, Geometry::kSquare, 9.0));
  TimeDependentHamiltonian h(m.basis->dimension());
  h.add(m.static_part);
  PulseSpec p = m.pulse;
  h.add(m.target_drive, [p](double s) { return p.amplitude(s); });
  const auto &b = *m.basis;
  auto psi0 = StateVector::basis_state(
      m.basis, b.index(std::vector<int>{b.atom(0).index_of("g1"), b.atom(1).index_of("r"), b.atom(2).index_of("g0")}));
  EvolveOptions on, off;
  on.tol = off.tol = 1e-11;
  off.restrict_subspace = false;
  auto a = evolve(psi0, h, 0.0, p.duration, on);
  auto z = evolve(psi0, h, 0.0, p.duration, off);
  EXPECT_LT(a.subspace_dimension, b.dimension());
  EXPECT_EQ(z.subspace_dimension, b.dimension());
  EXPECT_LT((a.states.back().amplitudes() - z.states.back().amplitudes()).norm(), 1e-8);
  EXPECT_NEAR(a.states.back().norm(), 1.0, 1e-9);
}

TEST(Evolve, HamiltonianSumAndValidation) {
  auto t = two_level();
  TimeDependentHamiltonian h(t.model.basis->dimension());
  h.add(t.model.target_drive_bare, [](double s) { return 2.0 * s; });
  h.add(t.model.target_drive_bare);
  SparseMatrix expect = t.model.target_drive_bare * Complex(7.0);
  EXPECT_LT(SparseMatrix(h.at(3.0) - expect).norm(), 1e-12);
  EXPECT_EQ(uniform_nodes(0.0, 1.0, 5), (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
  auto psi0 = StateVector::basis_state(t.model.basis, t.g1);
  EXPECT_THROW(evolve(psi0, h, 1.0, 0.0), ConfigError);
  TimeDependentHamiltonian wrong(3);
  EXPECT_THROW(evolve(psi0, wrong, 0.0, 1.0), ConfigError);
}

}  // namespace
}  // namespace darkgate
