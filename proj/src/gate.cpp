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

#include "darkgate/gate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "darkgate/analytics.hpp"
#include "darkgate/errors.hpp"

namespace darkgate {

namespace {

struct Stages {
  TimeDependentHamiltonian forward;
  TimeDependentHamiltonian target;
  TimeDependentHamiltonian backward;
  double pi_duration;
  double target_duration;
};

Stages make_stages(const GateModel &m) {
  const std::size_t n = m.basis->dimension();
  Stages s{TimeDependentHamiltonian(n), TimeDependentHamiltonian(n), TimeDependentHamiltonian(n), kPi / m.omega_c,
           m.pulse.duration};
  const double oc = m.omega_c;
  s.forward.add(m.static_part);
  s.forward.add(m.control_drive, [oc](double) { return oc; });
  s.target.add(m.static_part);
  PulseSpec pulse = m.pulse;
  s.target.add(m.target_drive, [pulse](double t) { return pulse.amplitude(t); });
  s.backward.add(m.static_part);
  s.backward.add(m.control_drive, [oc](double) { return -oc; });
  return s;
}

StateVector final_state(const StateVector &psi, const TimeDependentHamiltonian &h, double duration, double tol) {
  EvolveOptions eo;
  eo.tol = tol;
  return evolve(psi, h, 0.0, duration, eo).states.back();
}

StateVector run_stages(const GateModel &m, const Stages &s, const StateVector &psi0, const ProtocolOptions &o) {
  StateVector psi = psi0;
  if (o.control == ControlMode::kIdeal) {
    psi = apply_ideal_pi(m, psi, false);
  } else {
    psi = final_state(psi, s.forward, s.pi_duration, o.tol);
  }
  psi = final_state(psi.normalized(), s.target, s.target_duration, o.tol);
  if (o.control == ControlMode::kIdeal) {
    psi = apply_ideal_pi(m, psi, true);
  } else {
    psi = final_state(psi.normalized(), s.backward, s.pi_duration, o.tol);
  }
  return psi;
}

double bright_fraction(const StateVector &psi, const StateVector &dark) {
  Complex overlap = inner_product(dark, psi);
  double n2 = psi.amplitudes().squaredNorm();
  Vector rest = psi.amplitudes() - dark.amplitudes() * overlap;
  return rest.squaredNorm() / n2;
}

std::size_t index_from_levels(const ProductBasis &basis, const std::vector<const char *> &labels) {
  std::vector<int> t(labels.size());
  for (std::size_t a = 0; a < labels.size(); ++a) {
    t[a] = basis.atom(a).index_of(labels[a]);
    if (t[a] < 0) throw ConfigError(std::string("basis lacks level '") + labels[a] + "'");
  }
  return basis.index(t);
}

}  // namespace

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)> &f) {
  std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto &t : pool) t.join();
  for (auto &e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

StateVector apply_ideal_pi(const GateModel &model, const StateVector &psi, bool inverse) {
  const ProductBasis &b = *model.basis;
  Vector cur = psi.amplitudes();
  const Complex phase = inverse ? Complex(0.0, 1.0) : Complex(0.0, -1.0);
  for (auto a : model.control_atoms) {
    int g0 = b.atom(a).index_of(level::kG0), r = b.atom(a).index_of(level::kR);
    if (g0 < 0 || r < 0) continue;
    Vector next = cur;
    for (std::size_t idx = 0; idx < b.dimension(); ++idx) {
      int l = b.level_of(idx, a);
      if (l == g0) {
        next[static_cast<Eigen::Index>(b.with_level(idx, a, r))] = phase * cur[static_cast<Eigen::Index>(idx)];
      } else if (l == r) {
        next[static_cast<Eigen::Index>(b.with_level(idx, a, g0))] = phase * cur[static_cast<Eigen::Index>(idx)];
      }
    }
    cur = std::move(next);
  }
  return StateVector(psi.basis(), std::move(cur));
}

StateVector run_protocol(const GateModel &model, const StateVector &psi0, const ProtocolOptions &options) {
  return run_stages(model, make_stages(model), psi0, options);
}

std::size_t computational_index(const ProductBasis &basis, std::uint64_t bits) {
  const std::size_t n = basis.num_atoms();
  std::vector<int> t(n);
  for (std::size_t a = 0; a < n; ++a) {
    bool one = (bits >> (n - 1 - a)) & 1U;
    t[a] = basis.atom(a).index_of(one ? level::kG1 : level::kG0);
    if (t[a] < 0) throw ConfigError("basis lacks a qubit level");
  }
  return basis.index(t);
}

DenseMatrix ideal_phase_gate(GateKind kind, int k) {
  const std::size_t n = std::size_t{1} << (k + 1);
  DenseMatrix p = DenseMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t q = 0; q < n; ++q) {
    bool single = (q >> k) & 1U;
    std::size_t multi = q & ((std::size_t{1} << k) - 1);
    int ones = std::popcount(multi);
    double sign = 1.0;
    if (kind == GateKind::kToffoli) {
      if (single && ones == k) sign = -1.0;
    } else if (single && (ones % 2 == 1)) {
      sign = -1.0;
    }
    p(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(q)) = sign;
  }
  return p;
}

DenseMatrix driven_hadamards(GateKind kind, int k) {
  Eigen::Matrix2cd h;
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  DenseMatrix out = DenseMatrix::Identity(1, 1);
  for (int a = 0; a <= k; ++a) {
    bool driven = kind == GateKind::kToffoli ? a == 0 : a > 0;
    Eigen::Matrix2cd f = driven ? h : Eigen::Matrix2cd::Identity();
    DenseMatrix next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      for (Eigen::Index j = 0; j < out.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = out(i, j) * f;
    }
    out = std::move(next);
  }
  return out;
}

DenseMatrix ideal_gate(GateKind kind, int k) {
  DenseMatrix h = driven_hadamards(kind, k);
  DenseMatrix u = h * ideal_phase_gate(kind, k) * h;
  // Remove rounding noise from the Hadamard products.
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    for (Eigen::Index j = 0; j < u.cols(); ++j) u(i, j) = Complex(std::round(u(i, j).real()), std::round(u(i, j).imag()));
  }
  return u;
}

DenseMatrix fix_global_phase(const DenseMatrix &u) {
  Complex z = u(0, 0);
  if (std::abs(z) == 0.0) return u;
  return u * (std::abs(z) / z);
}

double average_gate_fidelity(const DenseMatrix &u_gate, const DenseMatrix &u_ideal) {
  if (u_gate.rows() != u_ideal.rows() || u_gate.cols() != u_ideal.cols() || u_gate.rows() != u_gate.cols()) {
    throw ConfigError("gate fidelity needs square matrices of equal dimension");
  }
  const double n = static_cast<double>(u_gate.rows());
  DenseMatrix m = u_ideal.adjoint() * u_gate;
  double tr_mm = (m * m.adjoint()).trace().real();
  double tr = std::norm(m.trace());
  return (tr_mm + tr) / (n * (n + 1.0));
}

nlohmann::json GateUnitary::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) row.push_back({matrix(i, j).real(), matrix(i, j).imag()});
    rows.push_back(row);
  }
  return {{"schema", "darkgate.gate_unitary/1"},
          {"kind", to_string(kind)},
          {"k", k},
          {"dimension", matrix.rows()},
          {"qubit_order", "atom 0 (single qubit) is the most significant bit"},
          {"matrix", rows},
          {"column_leakage", column_leakage},
          {"unitarity_defect", unitarity_defect}};
}

GateUnitary gate_unitary(const GateModel &model, const ProtocolOptions &options, double leakage_threshold, int max_k) {
  if (model.k > max_k) {
    throw ConfigError("full gate simulation is capped at k = " + std::to_string(max_k));
  }
  const int k = model.k;
  const std::size_t n = std::size_t{1} << (k + 1);
  Stages stages = make_stages(model);
  std::vector<std::size_t> comp(n);
  for (std::size_t q = 0; q < n; ++q) comp[q] = computational_index(*model.basis, q);
  DenseMatrix phase(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  parallel_for(n, options.threads, [&](std::size_t q) {
    StateVector out = run_stages(model, stages, StateVector::basis_state(model.basis, comp[q]), options);
    for (std::size_t p = 0; p < n; ++p) phase(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) = out[comp[p]];
  });
  GateUnitary g;
  g.kind = model.kind;
  g.k = k;
  DenseMatrix h = driven_hadamards(model.kind, k);
  g.matrix = fix_global_phase(h * phase * h);
  for (std::size_t q = 0; q < n; ++q) {
    double leak = std::max(0.0, 1.0 - phase.col(static_cast<Eigen::Index>(q)).squaredNorm());
    g.column_leakage.push_back(leak);
    g.column_flagged.push_back(leak > leakage_threshold);
  }
  DenseMatrix defect = g.matrix.adjoint() * g.matrix - DenseMatrix::Identity(g.matrix.rows(), g.matrix.cols());
  g.unitarity_defect = defect.cwiseAbs().maxCoeff();
  return g;
}

GateUnitary gate_unitary(const SystemConfig &config, const LatticeConfig &lattice, const ModelOptions &model_options,
                         const ProtocolOptions &options, double leakage_threshold, int max_k) {
  if (config.k > max_k) throw ConfigError("full gate simulation is capped at k = " + std::to_string(max_k));
  return gate_unitary(build_gate_model(config, lattice, model_options), options, leakage_threshold, max_k);
}

StateVector dark_initial_state(const GateModel &model, int j) {
  if (j < 1 || j > model.k) throw ConfigError("dark configuration needs 1 <= j <= k");
  std::vector<const char *> labels(model.basis->num_atoms());
  if (model.kind == GateKind::kToffoli) {
    labels[0] = level::kG1;
    for (int a = 1; a <= model.k; ++a) labels[static_cast<std::size_t>(a)] = a <= j ? level::kR : level::kG1;
  } else {
    labels[0] = level::kR;
    for (int a = 1; a <= model.k; ++a) labels[static_cast<std::size_t>(a)] = a <= j ? level::kG1 : level::kG0;
  }
  return StateVector::basis_state(model.basis, index_from_levels(*model.basis, labels));
}

std::function<StateVector(double)> toffoli_analytic_dark_state(const GateModel &model, int j) {
  if (model.kind != GateKind::kToffoli) throw ConfigError("closed-form dark state is for the Toffoli gate");
  StateVector init = dark_initial_state(model, j);
  const ProductBasis &b = *model.basis;
  const std::size_t i0 = static_cast<std::size_t>(std::distance(
      init.amplitudes().data(),
      std::find(init.amplitudes().data(), init.amplitudes().data() + init.amplitudes().size(), Complex(1.0))));
  Vector transferred = Vector::Zero(static_cast<Eigen::Index>(b.dimension()));
  double s2 = 0.0;
  int a_t = b.atom(0).index_of(level::kA);
  for (int i = 1; i <= j; ++i) {
    double c = model.b1_couplings[static_cast<std::size_t>(i - 1)];
    std::size_t idx = b.with_level(i0, 0, a_t);
    idx = b.with_level(idx, static_cast<std::size_t>(i), b.atom(static_cast<std::size_t>(i)).index_of(level::kB));
    transferred[static_cast<Eigen::Index>(idx)] = c;
    s2 += c * c;
  }
  transferred /= std::sqrt(s2);
  const double root = std::sqrt(s2);
  PulseSpec pulse = model.pulse;
  BasisPtr basis = model.basis;
  return [=](double t) {
    double theta = std::atan(pulse.amplitude(t) / (2.0 * root));
    Vector v = init.amplitudes() * std::cos(theta) - transferred * std::sin(theta);
    return StateVector(basis, std::move(v));
  };
}

StateVector embed_fanout_ladder(const GateModel &model, int j, const std::vector<double> &amplitudes) {
  if (model.kind != GateKind::kFanout) throw ConfigError("ladder embedding is for the fan-out gate");
  if (amplitudes.size() != static_cast<std::size_t>(j) + 1) throw ConfigError("ladder needs j + 1 amplitudes");
  StateVector init = dark_initial_state(model, j);
  const ProductBasis &b = *model.basis;
  std::size_t i0 = 0;
  for (std::size_t i = 0; i < b.dimension(); ++i) {
    if (init[i] != Complex(0.0)) i0 = i;
  }
  const double sign = model.b1_couplings.front() < 0 ? -1.0 : 1.0;
  const int r_c = b.atom(0).index_of(level::kR), a_c = b.atom(0).index_of(level::kA);
  Vector v = Vector::Zero(static_cast<Eigen::Index>(b.dimension()));
  // Enumerate assignments of the j driven targets to {g1, r, b}.
  std::vector<int> assign(static_cast<std::size_t>(j), 0);
  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(j) + 1);
  std::size_t total = 1;
  for (int i = 0; i < j; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    int nb = 0, nr = 0;
    for (int i = 0; i < j; ++i) {
      assign[static_cast<std::size_t>(i)] = static_cast<int>(c % 3);
      c /= 3;
      nb += assign[static_cast<std::size_t>(i)] == 2;
      nr += assign[static_cast<std::size_t>(i)] == 1;
    }
    int m;
    if (nb == 0 && nr % 2 == 0) {
      m = nr;
    } else if (nb == 1 && nr % 2 == 0) {
      m = nr + 1;
    } else {
      continue;
    }
    std::size_t idx = b.with_level(i0, 0, nb ? a_c : r_c);
    for (int i = 0; i < j; ++i) {
      auto atom = static_cast<std::size_t>(i + 1);
      const char *lab = assign[static_cast<std::size_t>(i)] == 0 ? level::kG1 : assign[static_cast<std::size_t>(i)] == 1 ? level::kR : level::kB;
      idx = b.with_level(idx, atom, b.atom(atom).index_of(lab));
    }
    members[static_cast<std::size_t>(m)].push_back(idx);
  }
  for (int m = 0; m <= j; ++m) {
    const auto &mem = members[static_cast<std::size_t>(m)];
    double amp = amplitudes[static_cast<std::size_t>(m)] * (m % 2 ? sign : 1.0) / std::sqrt(static_cast<double>(mem.size()));
    for (auto idx : mem) v[static_cast<Eigen::Index>(idx)] = amp;
  }
  return StateVector(model.basis, std::move(v));
}

NullSpaceTracker::NullSpaceTracker(BasisPtr basis, SparseMatrix exchange, SparseMatrix drive, PulseSpec pulse,
                                   const StateVector &initial)
    : basis_(std::move(basis)), exchange_(std::move(exchange)), drive_(std::move(drive)), pulse_(pulse) {
  std::vector<std::size_t> seeds;
  for (std::size_t i = 0; i < basis_->dimension(); ++i) {
    if (initial[i] != Complex(0.0)) seeds.push_back(i);
  }
  std::vector<const SparseMatrix *> parts{&exchange_, &drive_};
  subspace_ = reachable_indices(parts, seeds);
  exchange_ = restrict_to(exchange_, subspace_);
  drive_ = restrict_to(drive_, subspace_);
  previous_.resize(static_cast<Eigen::Index>(subspace_.size()));
  for (std::size_t i = 0; i < subspace_.size(); ++i) previous_[static_cast<Eigen::Index>(i)] = initial[subspace_[i]];
}

NullSpaceTracker::NullSpaceTracker(const GateModel &model, const StateVector &initial)
    : NullSpaceTracker(model.basis, model.exchange_b1, model.target_drive_bare, model.pulse, initial) {}

StateVector NullSpaceTracker::operator()(double t) {
  SparseMatrix hs = exchange_ + drive_ * Complex(pulse_.amplitude(t));
  DenseMatrix h(hs);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h);
  const auto &ev = es.eigenvalues();
  double scale = std::max(ev.cwiseAbs().maxCoeff(), 1.0);
  Vector projected = Vector::Zero(previous_.size());
  for (Eigen::Index c = 0; c < ev.size(); ++c) {
    if (std::abs(ev[c]) < 1e-9 * scale) {
      auto col = es.eigenvectors().col(c);
      projected += col * col.dot(previous_);
    }
  }
  if (projected.squaredNorm() < 0.5) {
    // Unequal couplings can split the null pair. Follow the eigenvector with
    // the largest overlap together with every level the pulse cannot resolve
    // from it.
    Eigen::Index best = 0;
    double overlap = -1.0;
    for (Eigen::Index c = 0; c < ev.size(); ++c) {
      double o = std::abs(es.eigenvectors().col(c).dot(previous_));
      if (o > overlap) {
        overlap = o;
        best = c;
      }
    }
    const double window = 0.1 / pulse_.duration;
    projected.setZero();
    for (Eigen::Index c = 0; c < ev.size(); ++c) {
      if (std::abs(ev[c] - ev[best]) < window) {
        auto col = es.eigenvectors().col(c);
        projected += col * col.dot(previous_);
      }
    }
    if (projected.squaredNorm() < 0.5) throw NumericalError("dark state lost: no eigenspace follows the previous one", t);
    ++quasi_dark_steps_;
  }
  previous_ = projected / projected.norm();
  Vector full = Vector::Zero(static_cast<Eigen::Index>(basis_->dimension()));
  for (std::size_t i = 0; i < subspace_.size(); ++i) full[static_cast<Eigen::Index>(subspace_[i])] = previous_[static_cast<Eigen::Index>(i)];
  return StateVector(basis_, std::move(full));
}

std::vector<double> dark_state_infidelity(const Trajectory &traj, const std::function<StateVector(double)> &dark) {
  std::vector<double> out;
  out.reserve(traj.times.size());
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    StateVector d = dark(traj.times[i]).normalized();
    out.push_back(std::max(0.0, bright_fraction(traj.states[i], d)));
  }
  return out;
}

DarkStateRun track_dark_state(const GateModel &model, int j, double tol, int nodes) {
  StateVector init = dark_initial_state(model, j);
  TimeDependentHamiltonian h(model.basis->dimension());
  h.add(model.static_part);
  PulseSpec pulse = model.pulse;
  h.add(model.target_drive, [pulse](double t) { return pulse.amplitude(t); });
  EvolveOptions eo;
  eo.tol = tol;
  eo.nodes = uniform_nodes(0.0, pulse.duration, nodes);
  DarkStateRun run;
  run.trajectory = evolve(init, h, 0.0, pulse.duration, eo);
  if (model.kind == GateKind::kToffoli) {
    run.infidelity = dark_state_infidelity(run.trajectory, toffoli_analytic_dark_state(model, j));
  } else {
    NullSpaceTracker tracker(model, init);
    run.infidelity = dark_state_infidelity(run.trajectory, std::ref(tracker));
  }
  run.final_bright_population = bright_fraction(run.trajectory.states.back(), init);
  return run;
}

double simulate_bright_population(GateKind kind, int j, double omega_t_over_b1, const RydbergScheme &scheme,
                                  double r, double tol) {
  SystemConfig c;
  c.kind = kind;
  c.k = j;
  c.scheme = scheme;
  c.lattice_constant = r;
  c.omega_t = 0.0;
  c.omega_t_over_b1 = omega_t_over_b1;
  ModelOptions mo;
  mo.spectators = false;
  mo.include_b2 = false;
  mo.include_vdw = false;
  GateModel model = build_gate_model(c, star_lattice(j, r), mo);
  StateVector init = dark_initial_state(model, j);
  TimeDependentHamiltonian h(model.basis->dimension());
  h.add(model.static_part);
  PulseSpec pulse = model.pulse;
  h.add(model.target_drive, [pulse](double t) { return pulse.amplitude(t); });
  EvolveOptions eo;
  eo.tol = tol;
  StateVector out = evolve(init, h, 0.0, pulse.duration, eo).states.back();
  return bright_fraction(out, init);
}

std::vector<LeakagePoint> leakage_scan(const SystemConfig &base, const std::vector<double> &radii,
                                       const ProtocolOptions &options) {
  if (base.scheme.leakage_channels.empty()) throw ConfigError("scheme has no leakage channels");
  std::vector<int> resonant;
  for (const auto &ch : base.scheme.leakage_channels) {
    if (ch.resonant()) resonant.push_back(ch.id);
  }
  std::vector<LeakagePoint> out(radii.size());
  parallel_for(radii.size(), options.threads, [&](std::size_t i) {
    SystemConfig c = base;
    c.k = 2;
    c.geometry = Geometry::kLinear;
    c.lattice_constant = radii[i];
    if (c.omega_t > 0.0) throw ConfigError("leakage scan fixes Omega_t / B1; give omega_t_over_b1 instead");
    LatticeConfig lattice = place_atoms(2, Geometry::kLinear, radii[i]);
    ModelOptions full;
    full.spectators = false;
    full.leakage = true;
    ModelOptions ideal = full;
    ideal.channels = resonant;
    BasisPtr basis = build_leakage_basis(c.kind, 2, c.scheme, full);
    GateModel m_full = build_gate_model(c, lattice, full, basis);
    GateModel m_ideal = build_gate_model(c, lattice, ideal, basis);
    std::vector<const char *> labels = c.kind == GateKind::kToffoli
                                           ? std::vector<const char *>{level::kG1, level::kG0, level::kG0}
                                           : std::vector<const char *>{level::kG0, level::kG1, level::kG1};
    std::size_t start = index_from_levels(*basis, labels);
    StateVector psi0 = StateVector::basis_state(basis, start);
    ProtocolOptions po = options;
    po.threads = 1;
    StateVector a = run_protocol(m_full, psi0, po);
    StateVector b = run_protocol(m_ideal, psi0, po);
    std::vector<const SparseMatrix *> parts{&m_ideal.static_part, &m_ideal.target_drive, &m_ideal.control_drive};
    std::vector<std::size_t> seeds{start};
    auto allowed = reachable_indices(parts, seeds);
    double inside = population(a, allowed);
    LeakagePoint p;
    p.r = radii[i];
    p.phase = std::arg(a[start] / b[start]);
    p.leaked = std::max(0.0, 1.0 - inside / a.amplitudes().squaredNorm());
    double x4 = std::pow(m_full.omega_t / std::abs(m_full.b1_couplings.front()), 4);
    p.envelope = c.kind == GateKind::kToffoli ? x4 / (640.0 * 4.0) : 2.0 * x4 / 640.0;
    out[i] = p;
  });
  return out;
}

}  // namespace darkgate
