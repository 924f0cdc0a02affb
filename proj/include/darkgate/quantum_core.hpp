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

#ifndef DARKGATE_QUANTUM_CORE_HPP
#define DARKGATE_QUANTUM_CORE_HPP

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace darkgate {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor, std::ptrdiff_t>;
using DenseMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class GateKind { kToffoli, kFanout };
enum class Role { kSingle, kMulti };

const char *to_string(GateKind kind);
GateKind parse_gate_kind(std::string_view name);

// Canonical level names shared by the atomic builders.
namespace level {
inline constexpr const char *kG0 = "g0";
inline constexpr const char *kG1 = "g1";
inline constexpr const char *kR = "r";
inline constexpr const char *kA = "a";
inline constexpr const char *kB = "b";
inline constexpr const char *kSpectator = "spectator";
}  // namespace level

inline constexpr std::size_t kMaxLevelsPerAtom = 9;
inline constexpr std::size_t kDefaultDimensionCap = 10'000'000;

// Ordered level names of one atom.
class LevelSet {
 public:
  // Throws ConfigError on duplicate labels, missing qubit levels or more
  // than kMaxLevelsPerAtom entries. `require_qubit_levels` is relaxed only
  // for reduced leakage bases that carry a single qubit level.
  LevelSet(std::vector<std::string> labels, Role role, bool require_qubit_levels = true);

  const std::vector<std::string> &labels() const { return labels_; }
  Role role() const { return role_; }
  std::size_t size() const { return labels_.size(); }
  // -1 when absent.
  int index_of(std::string_view label) const;
  bool contains(std::string_view label) const { return index_of(label) >= 0; }
  const std::string &label(std::size_t i) const { return labels_[i]; }
  bool operator==(const LevelSet &other) const = default;

 private:
  std::vector<std::string> labels_;
  Role role_;
};

// Tensor product of per-atom level sets. Atom 0 is the single qubit and atoms
// 1..k are the multi qubits. The last atom varies fastest.
class ProductBasis {
 public:
  explicit ProductBasis(std::vector<LevelSet> atoms, std::size_t dimension_cap = kDefaultDimensionCap);

  std::size_t num_atoms() const { return atoms_.size(); }
  std::size_t dimension() const { return dimension_; }
  const LevelSet &atom(std::size_t i) const { return atoms_[i]; }
  std::size_t stride(std::size_t atom) const { return strides_[atom]; }

  std::size_t index(std::span<const int> levels) const;
  std::vector<int> tuple(std::size_t index) const;
  int level_of(std::size_t index, std::size_t atom) const {
    return static_cast<int>((index / strides_[atom]) % atoms_[atom].size());
  }
  // Index obtained by replacing the level of `atom` in `index`.
  std::size_t with_level(std::size_t index, std::size_t atom, int new_level) const {
    return index + (static_cast<std::ptrdiff_t>(new_level) - level_of(index, atom)) * strides_[atom];
  }
  std::string describe(std::size_t index) const;
  bool operator==(const ProductBasis &other) const { return atoms_ == other.atoms_; }

 private:
  std::vector<LevelSet> atoms_;
  std::vector<std::size_t> strides_;
  std::size_t dimension_ = 1;
};

using BasisPtr = std::shared_ptr<const ProductBasis>;

struct BasisOptions {
  bool spectator = true;
  std::size_t dimension_cap = kDefaultDimensionCap;
};

// Gate basis: single atom {g0, g1, r, a, spectator}, multi atoms
// {g0, g1, r, b, spectator}. The single atom is the target for Toffoli and
// the control for fan-out; the level content is the same for both kinds.
BasisPtr build_basis(GateKind kind, int k, const BasisOptions &options = {});

class StateVector {
 public:
  StateVector(BasisPtr basis, Vector amplitudes);
  static StateVector basis_state(BasisPtr basis, std::size_t index);
  static StateVector zero(BasisPtr basis);

  const BasisPtr &basis() const { return basis_; }
  const Vector &amplitudes() const { return amplitudes_; }
  Vector &mutable_amplitudes() { return amplitudes_; }
  double norm() const { return amplitudes_.norm(); }
  // Throws NumericalError for the zero vector.
  StateVector normalized() const;
  Complex operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }

 private:
  BasisPtr basis_;
  Vector amplitudes_;
};

// <a|b>. Throws ConfigError when the bases differ.
Complex inner_product(const StateVector &a, const StateVector &b);

class OperatorMatrix {
 public:
  // When `hermitian` is set the defect is verified (tolerance 1e-12 relative
  // to the largest entry, absolute floor 1e-12).
  OperatorMatrix(BasisPtr basis, SparseMatrix matrix, bool hermitian);

  const BasisPtr &basis() const { return basis_; }
  const SparseMatrix &matrix() const { return matrix_; }
  bool hermitian() const { return hermitian_; }
  double hermiticity_defect() const;
  double max_abs() const;
  DenseMatrix to_dense() const { return DenseMatrix(matrix_); }
  StateVector apply(const StateVector &psi) const;
  Complex expectation(const StateVector &psi) const;

 private:
  BasisPtr basis_;
  SparseMatrix matrix_;
  bool hermitian_;
};

double hermiticity_defect(const SparseMatrix &m);

// Accumulates matrix elements; duplicates are summed on build().
class OperatorBuilder {
 public:
  explicit OperatorBuilder(std::size_t dimension) : dimension_(dimension) {}
  void add(std::size_t row, std::size_t col, Complex value);
  // Adds value at (row, col) and its conjugate at (col, row).
  void add_pair(std::size_t row, std::size_t col, Complex value);
  SparseMatrix build() const;

 private:
  std::size_t dimension_;
  std::vector<Eigen::Triplet<Complex, std::ptrdiff_t>> triplets_;
};

// Basis indices reachable from `seeds` through nonzero entries of any of the
// matrices, sorted ascending.
std::vector<std::size_t> reachable_indices(std::span<const SparseMatrix *const> parts,
                                           std::span<const std::size_t> seeds);

// Rows and columns of `m` restricted to `indices` (sorted).
SparseMatrix restrict_to(const SparseMatrix &m, std::span<const std::size_t> indices);

// Population of `psi` in the listed basis states.
double population(const StateVector &psi, std::span<const std::size_t> indices);

}  // namespace darkgate

#endif  // DARKGATE_QUANTUM_CORE_HPP
