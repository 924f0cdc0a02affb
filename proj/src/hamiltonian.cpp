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

#include "darkgate/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "darkgate/errors.hpp"

namespace darkgate {

namespace {

bool is_base_level(const std::string &l) { return l == level::kR || l == level::kA || l == level::kB; }

bool selected(const ModelOptions &o, int id) {
  return o.channels.empty() || std::find(o.channels.begin(), o.channels.end(), id) != o.channels.end();
}

// Adds value * (|dst><src| + h.c.) for every ordered atom pair, each unordered
// matrix element once.
class PairCoupler {
 public:
  PairCoupler(const ProductBasis &basis, OperatorBuilder &builder) : basis_(basis), builder_(builder) {}

  void couple(std::size_t atom_i, std::size_t atom_l, const std::string &src_i, const std::string &src_l,
              const std::string &dst_i, const std::string &dst_l, double value) {
    const auto &li = basis_.atom(atom_i);
    const auto &ll = basis_.atom(atom_l);
    int si = li.index_of(src_i), sl = ll.index_of(src_l), di = li.index_of(dst_i), dl = ll.index_of(dst_l);
    if (si < 0 || sl < 0 || di < 0 || dl < 0 || value == 0.0) return;
    for (std::size_t idx = 0; idx < basis_.dimension(); ++idx) {
      if (basis_.level_of(idx, atom_i) != si || basis_.level_of(idx, atom_l) != sl) continue;
      std::size_t to = basis_.with_level(basis_.with_level(idx, atom_i, di), atom_l, dl);
      if (to == idx) continue;
      auto key = std::minmax(idx, to);
      if (seen_.insert({key.first, key.second}).second) builder_.add_pair(to, idx, value);
    }
  }
  // Call between logically distinct channels so that equal elements add up.
  void next_channel() { seen_.clear(); }

 private:
  const ProductBasis &basis_;
  OperatorBuilder &builder_;
  std::set<std::pair<std::size_t, std::size_t>> seen_;
};

void add_level_energy(OperatorBuilder &b, const ProductBasis &basis, std::size_t atom, const std::string &label,
                      double energy) {
  int li = basis.atom(atom).index_of(label);
  if (li < 0 || energy == 0.0) return;
  for (std::size_t idx = 0; idx < basis.dimension(); ++idx) {
    if (basis.level_of(idx, atom) == li) b.add(idx, idx, energy);
  }
}

void add_transition(OperatorBuilder &b, const ProductBasis &basis, std::size_t atom, const std::string &from,
                    const std::string &to, double value) {
  int lf = basis.atom(atom).index_of(from), lt = basis.atom(atom).index_of(to);
  if (lf < 0 || lt < 0) return;
  for (std::size_t idx = 0; idx < basis.dimension(); ++idx) {
    if (basis.level_of(idx, atom) == lf) b.add_pair(basis.with_level(idx, atom, lt), idx, value);
  }
}

}  // namespace

BasisPtr build_leakage_basis(GateKind kind, int k, const RydbergScheme &scheme, const ModelOptions &options) {
  if (k < 1) throw ConfigError("qubit count k must be at least 1");
  if (scheme.leakage_channels.empty()) {
    throw ConfigError("scheme '" + scheme.name + "' provides no leakage channels");
  }
  std::vector<std::string> single{kind == GateKind::kToffoli ? level::kG1 : level::kG0, level::kR, level::kA};
  std::vector<std::string> multi{level::kG0, level::kG1, level::kR, level::kB};
  auto add = [](std::vector<std::string> &v, const std::string &l) {
    if (!is_base_level(l) && std::find(v.begin(), v.end(), l) == v.end()) v.push_back(l);
  };
  for (const auto &ch : scheme.leakage_channels) {
    if (ch.kind == ChannelKind::kSingleMulti) {
      add(single, ch.destination[0]);
      add(multi, ch.destination[1]);
    } else {
      add(multi, ch.destination[0]);
      add(multi, ch.destination[1]);
    }
  }
  std::vector<LevelSet> atoms;
  atoms.emplace_back(single, Role::kSingle, false);
  for (int i = 0; i < k; ++i) atoms.emplace_back(multi, Role::kMulti);
  return std::make_shared<const ProductBasis>(std::move(atoms), options.dimension_cap);
}

std::map<std::pair<Role, std::string>, double> solve_level_energies(const RydbergScheme &scheme,
                                                                    const std::vector<int> &channels,
                                                                    double *residual) {
  ModelOptions sel;
  sel.channels = channels;
  std::vector<std::pair<Role, std::string>> unknowns;
  auto unknown = [&](Role role, const std::string &label) -> int {
    if (label == level::kG0 || label == level::kG1 || label == level::kR) return -1;
    std::pair<Role, std::string> key{role, label};
    auto it = std::find(unknowns.begin(), unknowns.end(), key);
    if (it != unknowns.end()) return static_cast<int>(it - unknowns.begin());
    unknowns.push_back(key);
    return static_cast<int>(unknowns.size()) - 1;
  };
  std::vector<std::vector<std::pair<int, double>>> rows;
  std::vector<double> rhs;
  for (const auto &ch : scheme.leakage_channels) {
    if (!selected(sel, ch.id)) continue;
    Role r0 = ch.kind == ChannelKind::kSingleMulti ? Role::kSingle : Role::kMulti;
    std::vector<std::pair<int, double>> row;
    auto put = [&](Role role, const std::string &label, double sign) {
      int u = unknown(role, label);
      if (u >= 0) row.emplace_back(u, sign);
    };
    put(r0, ch.destination[0], 1.0);
    put(Role::kMulti, ch.destination[1], 1.0);
    put(r0, ch.source[0], -1.0);
    put(Role::kMulti, ch.source[1], -1.0);
    rows.push_back(std::move(row));
    rhs.push_back(mhz(ch.delta_mhz));
  }
  std::map<std::pair<Role, std::string>, double> out;
  if (unknowns.empty()) {
    if (residual) *residual = 0.0;
    return out;
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(unknowns.size()));
  Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (auto [u, s] : rows[i]) a(static_cast<Eigen::Index>(i), u) += s;
    y[static_cast<Eigen::Index>(i)] = rhs[i];
  }
  Eigen::VectorXd x = a.completeOrthogonalDecomposition().solve(y);
  if (residual) *residual = (a * x - y).norm();
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    double v = x[static_cast<Eigen::Index>(u)];
    out[unknowns[u]] = std::abs(v) < 1e-9 ? 0.0 : v;
  }
  return out;
}

OperatorMatrix GateModel::hamiltonian(double t) const {
  SparseMatrix h = static_part + target_drive * Complex(pulse.amplitude(t));
  return OperatorMatrix(basis, std::move(h), true);
}

SparseMatrix GateModel::dark_hamiltonian(double t) const {
  return SparseMatrix(exchange_b1 + target_drive_bare * Complex(pulse.amplitude(t)));
}

GateModel build_gate_model(const SystemConfig &config, const LatticeConfig &lattice, const ModelOptions &options,
                           BasisPtr basis) {
  const int k = config.k;
  if (lattice.positions.size() != static_cast<std::size_t>(k) + 1 || basis->num_atoms() != lattice.positions.size()) {
    throw ConfigError("lattice, basis and k disagree on the number of atoms");
  }
  const auto &scheme = config.scheme;
  GateModel m;
  m.kind = config.kind;
  m.k = k;
  m.basis = basis;
  m.omega_t = resolve_omega_t(config);
  m.omega_c = config.omega_c;
  m.pulse = make_pulse(m.omega_t);
  const ProductBasis &bs = *basis;
  const std::size_t dim = bs.dimension();

  // Single <-> multi exchange.
  OperatorBuilder b1(dim);
  {
    PairCoupler c(bs, b1);
    for (int i = 1; i <= k; ++i) {
      double v = dipolar_coupling(scheme.c3_b1, lattice.distance(0, static_cast<std::size_t>(i)));
      m.b1_couplings.push_back(v);
      if (options.include_b1) c.couple(0, static_cast<std::size_t>(i), level::kR, level::kR, level::kA, level::kB, v);
    }
  }
  m.exchange_b1 = b1.build();

  OperatorBuilder st(dim);
  if (options.include_b2) {
    PairCoupler c(bs, st);
    for (int i = 1; i <= k; ++i) {
      for (int l = 1; l <= k; ++l) {
        if (i == l) continue;
        double v = dipolar_coupling(scheme.c3_b2, lattice.distance(static_cast<std::size_t>(i), static_cast<std::size_t>(l)));
        c.couple(static_cast<std::size_t>(i), static_cast<std::size_t>(l), level::kR, level::kB, level::kB, level::kR, v);
      }
    }
  }
  if (options.include_vdw) {
    for (int i = 1; i <= k; ++i) {
      for (int l = i + 1; l <= k; ++l) {
        double v = vdw_coupling(scheme.c6_mm, lattice.distance(static_cast<std::size_t>(i), static_cast<std::size_t>(l)));
        int ri = bs.atom(static_cast<std::size_t>(i)).index_of(level::kR);
        int rl = bs.atom(static_cast<std::size_t>(l)).index_of(level::kR);
        if (ri < 0 || rl < 0) continue;
        for (std::size_t idx = 0; idx < dim; ++idx) {
          if (bs.level_of(idx, static_cast<std::size_t>(i)) == ri && bs.level_of(idx, static_cast<std::size_t>(l)) == rl) {
            st.add(idx, idx, v);
          }
        }
      }
    }
  }
  add_level_energy(st, bs, 0, level::kSpectator, scheme.delta_single());
  for (int i = 1; i <= k; ++i) add_level_energy(st, bs, static_cast<std::size_t>(i), level::kSpectator, scheme.delta_multi());

  if (options.leakage) {
    std::vector<int> ids;
    for (const auto &ch : scheme.leakage_channels) {
      if (selected(options, ch.id)) ids.push_back(ch.id);
    }
    m.level_energies = solve_level_energies(scheme, ids, &m.energy_residual);
    for (const auto &[key, e] : m.level_energies) {
      if (key.first == Role::kSingle) {
        add_level_energy(st, bs, 0, key.second, e);
      } else {
        for (int i = 1; i <= k; ++i) add_level_energy(st, bs, static_cast<std::size_t>(i), key.second, e);
      }
    }
    PairCoupler c(bs, st);
    for (const auto &ch : scheme.leakage_channels) {
      // The resonant channels are the B1 / B2 terms above.
      if (ch.resonant() || !selected(options, ch.id)) continue;
      c.next_channel();
      if (ch.kind == ChannelKind::kSingleMulti) {
        for (int i = 1; i <= k; ++i) {
          auto ai = static_cast<std::size_t>(i);
          double v = options.leakage_c3_scale * dipolar_coupling(ch.c3, lattice.distance(0, ai));
          c.couple(0, ai, ch.source[0], ch.source[1], ch.destination[0], ch.destination[1], v);
        }
      } else {
        for (int i = 1; i <= k; ++i) {
          for (int l = 1; l <= k; ++l) {
            if (i == l) continue;
            auto ai = static_cast<std::size_t>(i), al = static_cast<std::size_t>(l);
            double v = options.leakage_c3_scale * dipolar_coupling(ch.c3, lattice.distance(ai, al));
            c.couple(ai, al, ch.source[0], ch.source[1], ch.destination[0], ch.destination[1], v);
          }
        }
      }
    }
  }
  m.static_part = SparseMatrix(st.build() + m.exchange_b1);

  // Drives normalized to unit Rabi frequency: (1/2)(|ground><r| + h.c.).
  if (config.kind == GateKind::kToffoli) {
    m.target_atoms = {0};
    for (int i = 1; i <= k; ++i) m.control_atoms.push_back(static_cast<std::size_t>(i));
  } else {
    m.control_atoms = {0};
    for (int i = 1; i <= k; ++i) m.target_atoms.push_back(static_cast<std::size_t>(i));
  }
  OperatorBuilder td(dim), cd(dim), bare(dim);
  for (auto a : m.target_atoms) {
    add_transition(td, bs, a, level::kG1, level::kR, 0.5);
    add_transition(bare, bs, a, level::kG1, level::kR, 0.5);
    if (options.spectators) add_transition(td, bs, a, level::kG1, level::kSpectator, 0.5);
  }
  for (auto a : m.control_atoms) {
    add_transition(cd, bs, a, level::kG0, level::kR, 0.5);
    if (options.spectators) add_transition(cd, bs, a, level::kG0, level::kSpectator, 0.5);
  }
  m.target_drive = td.build();
  m.control_drive = cd.build();
  m.target_drive_bare = bare.build();
  return m;
}

GateModel build_gate_model(const SystemConfig &config, const LatticeConfig &lattice, const ModelOptions &options) {
  BasisPtr basis = options.leakage
                       ? build_leakage_basis(config.kind, config.k, config.scheme, options)
                       : build_basis(config.kind, config.k, {.spectator = options.spectators, .dimension_cap = options.dimension_cap});
  return build_gate_model(config, lattice, options, std::move(basis));
}

OperatorMatrix build_hamiltonian(GateKind kind, const SystemConfig &config, const LatticeConfig &lattice, double t,
                                 ModelOptions options) {
  SystemConfig c = config;
  c.kind = kind;
  options.leakage = false;
  return build_gate_model(c, lattice, options).hamiltonian(t);
}

OperatorMatrix build_leakage_hamiltonian(const SystemConfig &config, const LatticeConfig &lattice, double t,
                                         ModelOptions options) {
  options.leakage = true;
  return build_gate_model(config, lattice, options).hamiltonian(t);
}

LatticeConfig star_lattice(int k, double r) { return place_atoms(k, Geometry::kStar, r); }

}  // namespace darkgate
