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

#include "darkgate/quantum_core.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_set>

#include "darkgate/errors.hpp"

namespace darkgate {

const char *to_string(GateKind kind) { return kind == GateKind::kToffoli ? "toffoli" : "fanout"; }

GateKind parse_gate_kind(std::string_view name) {
  if (name == "toffoli") return GateKind::kToffoli;
  if (name == "fanout" || name == "fan-out") return GateKind::kFanout;
  throw ConfigError("unknown gate kind '" + std::string(name) + "' (expected toffoli or fanout)");
}

LevelSet::LevelSet(std::vector<std::string> labels, Role role, bool require_qubit_levels)
    : labels_(std::move(labels)), role_(role) {
  if (labels_.empty() || labels_.size() > kMaxLevelsPerAtom) {
    throw ConfigError("level set must hold between 1 and 9 levels");
  }
  std::unordered_set<std::string> seen;
  for (const auto &l : labels_) {
    if (!seen.insert(l).second) throw ConfigError("duplicate level label '" + l + "'");
  }
  if (require_qubit_levels && (!seen.contains(level::kG0) || !seen.contains(level::kG1))) {
    throw ConfigError("level set must contain g0 and g1");
  }
}

int LevelSet::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return static_cast<int>(i);
  }
  return -1;
}

ProductBasis::ProductBasis(std::vector<LevelSet> atoms, std::size_t dimension_cap)
    : atoms_(std::move(atoms)), strides_(atoms_.size()) {
  if (atoms_.empty()) throw ConfigError("product basis needs at least one atom");
  for (std::size_t i = atoms_.size(); i-- > 0;) {
    strides_[i] = dimension_;
    if (dimension_ > dimension_cap / atoms_[i].size()) {
      throw ConfigError("basis dimension exceeds the cap of " + std::to_string(dimension_cap) +
                        "; reduce k or raise the dimension cap");
    }
    dimension_ *= atoms_[i].size();
  }
}

std::size_t ProductBasis::index(std::span<const int> levels) const {
  if (levels.size() != atoms_.size()) throw ConfigError("level tuple has wrong length");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 0 || static_cast<std::size_t>(levels[i]) >= atoms_[i].size()) {
      throw ConfigError("level index out of range");
    }
    idx += static_cast<std::size_t>(levels[i]) * strides_[i];
  }
  return idx;
}

std::vector<int> ProductBasis::tuple(std::size_t index) const {
  std::vector<int> t(atoms_.size());
  for (std::size_t i = 0; i < atoms_.size(); ++i) t[i] = level_of(index, i);
  return t;
}

std::string ProductBasis::describe(std::size_t index) const {
  std::ostringstream out;
  out << '|';
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (i) out << ',';
    out << atoms_[i].label(static_cast<std::size_t>(level_of(index, i)));
  }
  out << '>';
  return out.str();
}

BasisPtr build_basis(GateKind kind, int k, const BasisOptions &options) {
  (void)kind;
  if (k < 1) throw ConfigError("qubit count k must be at least 1");
  std::vector<std::string> single{level::kG0, level::kG1, level::kR, level::kA};
  std::vector<std::string> multi{level::kG0, level::kG1, level::kR, level::kB};
  if (options.spectator) {
    single.emplace_back(level::kSpectator);
    multi.emplace_back(level::kSpectator);
  }
  std::vector<LevelSet> atoms;
  atoms.emplace_back(single, Role::kSingle);
  for (int i = 0; i < k; ++i) atoms.emplace_back(multi, Role::kMulti);
  return std::make_shared<const ProductBasis>(std::move(atoms), options.dimension_cap);
}

StateVector::StateVector(BasisPtr basis, Vector amplitudes)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != basis_->dimension()) {
    throw ConfigError("amplitude vector does not match basis dimension");
  }
}

StateVector StateVector::basis_state(BasisPtr basis, std::size_t index) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(basis->dimension()));
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(std::move(basis), std::move(v));
}

StateVector StateVector::zero(BasisPtr basis) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(basis->dimension()));
  return StateVector(std::move(basis), std::move(v));
}

StateVector StateVector::normalized() const {
  double n = norm();
  if (n == 0.0) throw NumericalError("cannot normalize the zero vector");
  return StateVector(basis_, amplitudes_ / n);
}

Complex inner_product(const StateVector &a, const StateVector &b) {
  if (a.basis() != b.basis() && !(*a.basis() == *b.basis())) {
    throw ConfigError("inner product of states on different bases");
  }
  return a.amplitudes().dot(b.amplitudes());
}

double hermiticity_defect(const SparseMatrix &m) {
  SparseMatrix diff = m - SparseMatrix(m.adjoint());
  double worst = 0.0;
  for (Eigen::Index r = 0; r < diff.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(diff, r); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

OperatorMatrix::OperatorMatrix(BasisPtr basis, SparseMatrix matrix, bool hermitian)
    : basis_(std::move(basis)), matrix_(std::move(matrix)), hermitian_(hermitian) {
  if (static_cast<std::size_t>(matrix_.rows()) != basis_->dimension() || matrix_.rows() != matrix_.cols()) {
    throw ConfigError("operator shape does not match basis dimension");
  }
  if (hermitian_) {
    double scale = std::max(1.0, max_abs());
    if (hermiticity_defect() > 1e-12 * scale) throw NumericalError("operator flagged Hermitian is not Hermitian");
  }
}

double OperatorMatrix::hermiticity_defect() const { return darkgate::hermiticity_defect(matrix_); }

double OperatorMatrix::max_abs() const {
  double worst = 0.0;
  for (Eigen::Index r = 0; r < matrix_.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(matrix_, r); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

StateVector OperatorMatrix::apply(const StateVector &psi) const {
  if (!(*psi.basis() == *basis_)) throw ConfigError("operator and state live on different bases");
  return StateVector(basis_, matrix_ * psi.amplitudes());
}

Complex OperatorMatrix::expectation(const StateVector &psi) const {
  return inner_product(psi, apply(psi));
}

void OperatorBuilder::add(std::size_t row, std::size_t col, Complex value) {
  if (value == Complex(0.0)) return;
  triplets_.emplace_back(static_cast<std::ptrdiff_t>(row), static_cast<std::ptrdiff_t>(col), value);
}

void OperatorBuilder::add_pair(std::size_t row, std::size_t col, Complex value) {
  add(row, col, value);
  add(col, row, std::conj(value));
}

SparseMatrix OperatorBuilder::build() const {
  auto n = static_cast<std::ptrdiff_t>(dimension_);
  SparseMatrix m(n, n);
  m.setFromTriplets(triplets_.begin(), triplets_.end());
  m.makeCompressed();
  return m;
}

std::vector<std::size_t> reachable_indices(std::span<const SparseMatrix *const> parts,
                                           std::span<const std::size_t> seeds) {
  if (parts.empty()) return {seeds.begin(), seeds.end()};
  const auto n = static_cast<std::size_t>(parts.front()->rows());
  std::vector<char> seen(n, 0);
  std::deque<std::size_t> queue;
  for (auto s : seeds) {
    if (!seen[s]) {
      seen[s] = 1;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    for (const SparseMatrix *m : parts) {
      // Row i lists the states that couple to i; Hamiltonians are symmetric in pattern.
      for (SparseMatrix::InnerIterator it(*m, static_cast<std::ptrdiff_t>(i)); it; ++it) {
        auto j = static_cast<std::size_t>(it.col());
        if (!seen[j] && it.value() != Complex(0.0)) {
          seen[j] = 1;
          queue.push_back(j);
        }
      }
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) out.push_back(i);
  }
  return out;
}

SparseMatrix restrict_to(const SparseMatrix &m, std::span<const std::size_t> indices) {
  std::vector<std::ptrdiff_t> position(static_cast<std::size_t>(m.rows()), -1);
  for (std::size_t k = 0; k < indices.size(); ++k) position[indices[k]] = static_cast<std::ptrdiff_t>(k);
  std::vector<Eigen::Triplet<Complex, std::ptrdiff_t>> triplets;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    for (SparseMatrix::InnerIterator it(m, static_cast<std::ptrdiff_t>(indices[k])); it; ++it) {
      auto c = position[static_cast<std::size_t>(it.col())];
      if (c >= 0) triplets.emplace_back(static_cast<std::ptrdiff_t>(k), c, it.value());
    }
  }
  auto n = static_cast<std::ptrdiff_t>(indices.size());
  SparseMatrix out(n, n);
  out.setFromTriplets(triplets.begin(), triplets.end());
  out.makeCompressed();
  return out;
}

double population(const StateVector &psi, std::span<const std::size_t> indices) {
  double p = 0.0;
  for (auto i : indices) p += std::norm(psi[i]);
  return p;
}

}  // namespace darkgate
