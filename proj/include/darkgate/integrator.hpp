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

#ifndef DARKGATE_INTEGRATOR_HPP
#define DARKGATE_INTEGRATOR_HPP

#include <functional>
#include <span>
#include <vector>

#include "darkgate/quantum_core.hpp"

namespace darkgate {

struct HamiltonianTerm {
  SparseMatrix matrix;
  std::function<double(double)> coefficient;  // empty means 1
};

// H(t) = sum_n c_n(t) M_n.
class TimeDependentHamiltonian {
 public:
  explicit TimeDependentHamiltonian(std::size_t dimension) : dimension_(dimension) {}
  void add(SparseMatrix matrix, std::function<double(double)> coefficient = {});
  std::size_t dimension() const { return dimension_; }
  const std::vector<HamiltonianTerm> &terms() const { return terms_; }
  // y = H(t) x.
  void apply(double t, const Complex *x, Complex *y) const;
  TimeDependentHamiltonian restricted(std::span<const std::size_t> indices) const;
  SparseMatrix at(double t) const;

 private:
  std::size_t dimension_;
  std::vector<HamiltonianTerm> terms_;
};

struct EvolveOptions {
  double tol = 1e-9;          // absolute and relative local error bound
  std::vector<double> nodes;  // output times in [t0, t1]; t1 is always recorded
  bool restrict_subspace = true;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  std::size_t steps = 0;
  std::size_t subspace_dimension = 0;
};

// Adaptive Dormand-Prince integration of i d psi/dt = H(t) psi. When
// restrict_subspace is set the run is confined to the states reachable from
// the support of psi0 through the Hamiltonian's sparsity graph (exact).
// Throws NumericalError with the failure time on step-size underflow.
Trajectory evolve(const StateVector &psi0, const TimeDependentHamiltonian &h, double t0, double t1,
                  const EvolveOptions &options = {});

// n uniform nodes spanning [t0, t1] inclusive.
std::vector<double> uniform_nodes(double t0, double t1, int n);

}  // namespace darkgate

#endif  // DARKGATE_INTEGRATOR_HPP
