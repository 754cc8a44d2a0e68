// Copyright 2026 The noisecool Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Effective simulated Lindbladian of a noisy Trotter step.
//
// Every noise channel e^{t_g L_g} is moved to the end of the step by
// conjugating it with the unitaries that follow it (its frame F_g):
//   C = prod_g e^{t_g F_g L_g F_g^dag} . U_total
// and to first order
//   L_eff = -i[H_eff, .] + sum_g (t_g / tau) F_g L_g F_g^dag,
//   H_eff = i log(U_total) / tau   (identity component removed).
// Jumps are stored locally together with their frame so that large
// registers never need a dense 4^n superoperator.

#ifndef NOISECOOL_LINDBLAD_MAP_HPP
#define NOISECOOL_LINDBLAD_MAP_HPP

#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "noisecool/circuit.hpp"
#include "noisecool/common.hpp"
#include "noisecool/linalg.hpp"
#include "noisecool/model.hpp"
#include "noisecool/noise.hpp"
#include "noisecool/pauli.hpp"
#include "noisecool/superoperator.hpp"

namespace noisecool {

// ---------------------------------------------------------------------------
// Pauli decomposition

struct PauliTerm {
  PauliString pauli;
  double coefficient = 0.0;
};

// Tr(P A) for a Hermitian Pauli string P.
inline cplx pauli_trace(const PauliString& p, const Matrix& a) {
  const int n = p.n_qubits();
  std::size_t x = 0, z = 0;
  int n_y = 0;
  for (int q = 0; q < n; ++q) {
    const std::size_t bit = std::size_t{1} << (n - 1 - q);
    switch (p[q]) {
      case PauliLabel::X: x |= bit; break;
      case PauliLabel::Y: x |= bit; z |= bit; ++n_y; break;
      case PauliLabel::Z: z |= bit; break;
      case PauliLabel::I: break;
      default: throw ValidationError("pauli_trace: string must be Hermitian");
    }
  }
  cplx acc{0.0};
  for (std::size_t r = 0; r < dim_of(n); ++r) {
    const double sign = (std::popcount(r & z) & 1) ? -1.0 : 1.0;
    acc += sign * a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r ^ x));
  }
  static const cplx kPhase[4] = {1.0, kI, -1.0, -kI};
  return kPhase[n_y % 4] * acc;
}

// A = sum_P c_P P for Hermitian A; terms with |c_P| <= threshold dropped.
inline std::vector<PauliTerm> pauli_decomposition(const Matrix& a, double threshold = 1e-12) {
  require_square(a, "pauli_decomposition");
  const int n = qubits_for_dim(a.rows());
  const double d = static_cast<double>(a.rows());
  std::vector<PauliTerm> out;
  for (const auto& p : pauli_basis(n)) {
    const double c = pauli_trace(p, a).real() / d;
    if (std::abs(c) > threshold) out.push_back({p, c});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Effective Lindbladian

enum class FrameMode {
  Full,         // conjugate by every later unitary
  BlockExempt,  // skip complete decomposition blocks after the noise
};

inline const char* to_string(FrameMode m) { return m == FrameMode::Full ? "full" : "block_exempt"; }

struct EffectiveChannel {
  std::vector<int> qubits;
  std::vector<Jump> jumps;  // local operators, rates per simulated time (t_g / tau applied)
  Matrix generator;         // local dissipative generator, same scaling
  int frame = 0;
  int source_gate = 0;
  NoiseSource source = NoiseSource::Gate;
};

struct EffectiveLindbladian {
  int n_qubits = 0;
  double tau = 1.0;
  FrameMode mode = FrameMode::Full;
  Matrix hamiltonian;          // H_eff including conjugated drift terms
  Matrix circuit_hamiltonian;  // i log(U_total) / tau
  std::vector<Matrix> frames;  // 2^n unitaries
  std::vector<EffectiveChannel> channels;

  // Transformed jump operator F L F^dag on the full register.
  Matrix jump(std::size_t channel, std::size_t k) const {
    const auto& ch = channels.at(channel);
    const Matrix& f = frames.at(static_cast<std::size_t>(ch.frame));
    Matrix fd = f.adjoint();
    apply_left_local(fd, ch.jumps.at(k).op, ch.qubits, n_qubits);
    return f * fd;
  }

  std::size_t jump_count() const {
    std::size_t c = 0;
    for (const auto& ch : channels) c += ch.jumps.size();
    return c;
  }

  // out = L_eff[rho].
  Matrix apply(const Matrix& rho) const {
    Matrix out = -kI * (hamiltonian * rho - rho * hamiltonian);
    std::map<int, std::vector<const EffectiveChannel*>> by_frame;
    for (const auto& ch : channels) by_frame[ch.frame].push_back(&ch);
    for (const auto& [fi, list] : by_frame) {
      const Matrix& f = frames[static_cast<std::size_t>(fi)];
      const Matrix x = f.adjoint() * rho * f;
      Matrix acc = Matrix::Zero(rho.rows(), rho.cols());
      for (const auto* ch : list) {
        Matrix y = x;
        apply_superop_local(y, ch->generator, ch->qubits, n_qubits);
        acc += y;
      }
      out += f * acc * f.adjoint();
    }
    return out;
  }

  // Dense 4^n generator (small registers only).
  Superoperator superoperator() const {
    if (n_qubits > 5) throw DimensionError("EffectiveLindbladian::superoperator: register too large for dense form");
    const auto d = static_cast<Eigen::Index>(dim_of(n_qubits));
    Matrix s(d * d, d * d);
    for (Eigen::Index col = 0; col < d * d; ++col) {
      Matrix e = Matrix::Zero(d, d);
      e(col % d, col / d) = 1.0;
      s.col(col) = vec(apply(e));
    }
    return {n_qubits, std::move(s)};
  }
};

namespace detail {

inline Matrix full_identity(int n) {
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  return Matrix::Identity(d, d);
}

// frame <- frame . W_h where W_h = coherent_h . U_h.
inline void absorb_gate_right(Matrix& frame, const NoisyGate& g, int n) {
  for (auto it = g.coherent.rbegin(); it != g.coherent.rend(); ++it)
    apply_right_local(frame, it->matrix, it->qubits, n);
  if (g.unitary.size()) apply_right_local(frame, g.unitary, g.gate.qubits, n);
}

inline bool in_exempt_frame(const Gate& h, int block) {
  return h.block < 0 || (block >= 0 && h.block == block);
}

// Dissipative part only (drift enters the coherent part).
inline Matrix dissipative_generator(const NoiseGenerator& g) {
  const auto d = static_cast<Eigen::Index>(dim_of(g.n_qubits));
  return lindblad_superoperator(Matrix::Zero(d, d), g.jumps()).matrix;
}

}  // namespace detail

// H with the identity component removed and U = e^{-i H tau} up to global
// phase. The phase is chosen as the circular mean of the eigenphases.
inline Matrix effective_hamiltonian(const Matrix& u, double tau) {
  if (!(tau > 0.0)) throw ValidationError("effective_hamiltonian: tau must be positive");
  Eigen::ComplexSchur<Matrix> schur(u);
  cplx mean{0.0};
  for (Eigen::Index i = 0; i < u.rows(); ++i) mean += schur.matrixT()(i, i);
  const double alpha = std::abs(mean) > 1e-12 ? std::arg(mean) : 0.0;
  const Matrix logu = matrix_logarithm(std::exp(-kI * alpha) * u);
  Matrix h = kI * logu / tau;
  h = 0.5 * (h + h.adjoint()).eval();
  const cplx tr = h.trace() / static_cast<double>(h.rows());
  h -= tr * Matrix::Identity(h.rows(), h.cols());
  return h;
}

inline Matrix noiseless_unitary(const NoisyCircuit& nc) {
  Matrix u = detail::full_identity(nc.n_qubits);
  for (const auto& g : nc.gates) {
    if (g.unitary.size()) apply_left_local(u, g.unitary, g.gate.qubits, nc.n_qubits);
    for (const auto& c : g.coherent) apply_left_local(u, c.matrix, c.qubits, nc.n_qubits);
  }
  return u;
}

inline EffectiveLindbladian extract_effective_lindbladian(const NoisyCircuit& nc, double tau,
                                                          FrameMode mode = FrameMode::Full) {
  if (!(tau > 0.0)) throw ValidationError("extract_effective_lindbladian: tau must be positive");
  const int n = nc.n_qubits;
  const auto& gates = nc.gates;
  EffectiveLindbladian eff;
  eff.n_qubits = n;
  eff.tau = tau;
  eff.mode = mode;

  // Frame per noisy gate position.
  std::vector<int> frame_of(gates.size(), -1);
  if (mode == FrameMode::Full) {
    Matrix f = detail::full_identity(n);
    for (std::size_t i = gates.size(); i-- > 0;) {
      if (!gates[i].noise.empty()) {
        frame_of[i] = static_cast<int>(eff.frames.size());
        eff.frames.push_back(f);
      }
      detail::absorb_gate_right(f, gates[i], n);
    }
  } else {
    std::map<int, std::vector<std::size_t>> by_block;
    for (std::size_t i = 0; i < gates.size(); ++i)
      if (!gates[i].noise.empty()) by_block[gates[i].gate.block].push_back(i);
    for (const auto& [block, positions] : by_block) {
      Matrix f = detail::full_identity(n);
      std::size_t cursor = gates.size();
      for (auto it = positions.rbegin(); it != positions.rend(); ++it) {
        for (std::size_t h = cursor; h-- > *it + 1;)
          if (detail::in_exempt_frame(gates[h].gate, block)) detail::absorb_gate_right(f, gates[h], n);
        cursor = *it + 1;
        frame_of[*it] = static_cast<int>(eff.frames.size());
        eff.frames.push_back(f);
      }
    }
  }

  eff.circuit_hamiltonian = effective_hamiltonian(noiseless_unitary(nc), tau);
  eff.hamiltonian = eff.circuit_hamiltonian;

  for (std::size_t i = 0; i < gates.size(); ++i) {
    for (const auto& ch : gates[i].noise) {
      const double w = ch.duration / tau;
      const Matrix& f = eff.frames[static_cast<std::size_t>(frame_of[i])];
      if (ch.generator.drift.size()) {
        Matrix fd = f.adjoint();
        apply_left_local(fd, ch.generator.drift, ch.qubits, n);
        eff.hamiltonian += w * (f * fd);
      }
      EffectiveChannel ec;
      ec.qubits = ch.qubits;
      for (auto j : ch.generator.jumps()) {
        j.rate *= w;
        ec.jumps.push_back(std::move(j));
      }
      if (ec.jumps.empty()) continue;
      ec.generator = w * detail::dissipative_generator(ch.generator);
      ec.frame = frame_of[i];
      ec.source_gate = static_cast<int>(i);
      ec.source = ch.source;
      eff.channels.push_back(std::move(ec));
    }
  }
  return eff;
}

// Single-qubit Pauli rates of qubit q: gamma_P = sum rate |Tr(P_q L')|^2 / d^2,
// the diagonal of the Kossakowski matrix in the normalized Pauli basis.
struct PauliRates {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline PauliRates qubit_pauli_rates(const EffectiveLindbladian& eff, int q) {
  if (q < 0 || q >= eff.n_qubits) throw DimensionError("qubit_pauli_rates: qubit out of range");
  const double d = static_cast<double>(dim_of(eff.n_qubits));
  PauliRates r;
  const auto px = PauliString::single(eff.n_qubits, q, PauliLabel::X);
  const auto py = PauliString::single(eff.n_qubits, q, PauliLabel::Y);
  const auto pz = PauliString::single(eff.n_qubits, q, PauliLabel::Z);
  for (std::size_t c = 0; c < eff.channels.size(); ++c)
    for (std::size_t k = 0; k < eff.channels[c].jumps.size(); ++k) {
      const Matrix l = eff.jump(c, k);
      const double rate = eff.channels[c].jumps[k].rate;
      r.x += rate * std::norm(pauli_trace(px, l)) / (d * d);
      r.y += rate * std::norm(pauli_trace(py, l)) / (d * d);
      r.z += rate * std::norm(pauli_trace(pz, l)) / (d * d);
    }
  return r;
}

// ---------------------------------------------------------------------------
// Brute-force oracle

// (1/tau) log of the composed channel. Dense; registers up to 4 qubits.
inline Superoperator brute_force_generator(const NoisyCircuit& nc, double tau) {
  if (!(tau > 0.0)) throw ValidationError("brute_force_generator: tau must be positive");
  if (nc.n_qubits > 4)
    throw DimensionError("brute_force_generator: dense logarithm limited to 4 qubits; use generator_residual");
  const Superoperator c = noisy_circuit_superoperator(nc);
  Matrix l;
  try {
    l = matrix_logarithm(c.matrix);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string(e.what()) + " (composed channel; reduce tau)");
  }
  return {nc.n_qubits, l / tau};
}

struct GeneratorResidual {
  double step_norm = 0.0;       // || tau L_first - log C ||
  double generator_norm = 0.0;  // || L_first - (1/tau) log C ||
  bool dense = true;            // spectral norm if dense, probe estimate otherwise
  int krylov_dim = 0;
};

namespace detail {

// log(C) v by Arnoldi on C, with C applied through the noisy circuit.
inline Vector krylov_log_apply(const NoisyCircuit& nc, const Vector& v, int max_dim, double tol, int* used) {
  const auto d = static_cast<Eigen::Index>(dim_of(nc.n_qubits));
  const Eigen::Index len = v.size();
  const double beta = v.norm();
  Matrix basis(len, max_dim + 1);
  Matrix hess = Matrix::Zero(max_dim + 1, max_dim);
  basis.col(0) = v / beta;
  Vector prev;
  int m = 0;
  for (int j = 0; j < max_dim; ++j) {
    Matrix w_m = unvec(basis.col(j), d);
    apply_noisy_circuit(w_m, nc);
    Vector w = vec(w_m);
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i <= j; ++i) {
        const cplx h = basis.col(i).dot(w);
        hess(i, j) += h;
        w -= h * basis.col(i);
      }
    const double hn = w.norm();
    hess(j + 1, j) = hn;
    m = j + 1;
    const bool breakdown = hn < 1e-13;
    if (!breakdown) basis.col(j + 1) = w / hn;
    if (m % 4 == 0 || breakdown || m == max_dim) {
      const Matrix lh = matrix_logarithm(hess.topLeftCorner(m, m));
      Vector y = beta * basis.leftCols(m) * lh.col(0);
      if (breakdown) {
        prev = y;
        break;
      }
      if (prev.size() && (y - prev).norm() <= tol * std::max(1.0, y.norm())) {
        prev = y;
        break;
      }
      prev = y;
    }
  }
  if (used) *used = m;
  return prev;
}

}  // namespace detail

// Distance between the first-order generator and the exact log of the step
// channel. Dense spectral norm up to 4 qubits; beyond that the largest
// ||(tau L_first - log C) v|| over `probes` fixed random unit vectors.
inline GeneratorResidual generator_residual(const NoisyCircuit& nc, const EffectiveLindbladian& eff, int probes = 3,
                                            std::uint64_t seed = 1, int max_krylov = 160) {
  const double tau = eff.tau;
  GeneratorResidual r;
  if (nc.n_qubits <= 4) {
    const Matrix lf = eff.superoperator().matrix;
    const Matrix lc = brute_force_generator(nc, tau).matrix;
    r.generator_norm = spectral_norm(lf - lc);
    r.step_norm = tau * r.generator_norm;
    r.dense = true;
    return r;
  }
  r.dense = false;
  const auto d = static_cast<Eigen::Index>(dim_of(nc.n_qubits));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int p = 0; p < probes; ++p) {
    Vector v(d * d);
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(normal(rng), normal(rng));
    v /= v.norm();
    int used = 0;
    const Vector logc_v = detail::krylov_log_apply(nc, v, max_krylov, 1e-13, &used);
    r.krylov_dim = std::max(r.krylov_dim, used);
    const Vector first_v = tau * vec(eff.apply(unvec(v, d)));
    worst = std::max(worst, (first_v - logc_v).norm());
  }
  r.step_norm = worst;
  r.generator_norm = worst / tau;
  return r;
}

// ---------------------------------------------------------------------------
// Symmetrization table

struct FlipTableEntry {
  char lowering = 'Z';  // axis of the lowering operator
  char flip = 'X';      // flip axis
  std::array<double, 3> pauli_rates{};  // gamma_X, gamma_Y, gamma_Z of the averaged generator
  double offdiagonal = 0.0;              // largest off-diagonal Kossakowski entry
  bool unchanged = false;
  std::string classification;            // "no effect" or e.g. "X,Y"
};

// Lowering operator along `axis` with unit rate: Z- = (X+iY)/2,
// Y- = (Z+iX)/2, X- = (Y+iZ)/2.
inline Matrix axis_lowering(char axis) {
  switch (axis) {
    case 'Z': return 0.5 * (pauli::x() + kI * pauli::y());
    case 'Y': return 0.5 * (pauli::z() + kI * pauli::x());
    case 'X': return 0.5 * (pauli::y() + kI * pauli::z());
    default: throw ValidationError("axis_lowering: axis must be X, Y or Z");
  }
}

// Kossakowski matrix c_jk (j, k over X, Y, Z) of a single-qubit generator in
// the normalized basis P / sqrt(2).
inline Eigen::Matrix3cd kossakowski_matrix(const Matrix& generator) {
  const Matrix basis[3] = {pauli::x() / std::sqrt(2.0), pauli::y() / std::sqrt(2.0), pauli::z() / std::sqrt(2.0)};
  Eigen::Matrix3cd c;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      const Matrix e = kron(basis[k].conjugate(), basis[j]);
      c(j, k) = (e.adjoint() * generator).trace();
    }
  return c;
}

inline std::vector<FlipTableEntry> flip_transform_table(double tolerance = 1e-12) {
  std::vector<FlipTableEntry> out;
  const auto axis_matrix = [](char a) { return a == 'X' ? pauli::x() : a == 'Y' ? pauli::y() : pauli::z(); };
  for (char low : {'Z', 'Y', 'X'}) {
    const Matrix l = axis_lowering(low);
    const Matrix g0 = dissipator_matrix(l);
    for (char flip : {'X', 'Y', 'Z'}) {
      const Matrix f = axis_matrix(flip);
      const Matrix avg = 0.5 * (g0 + dissipator_matrix(f * l * f.adjoint()));
      const auto c = kossakowski_matrix(avg);
      FlipTableEntry e;
      e.lowering = low;
      e.flip = flip;
      for (int j = 0; j < 3; ++j) e.pauli_rates[static_cast<std::size_t>(j)] = c(j, j).real() / 2.0;
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          if (j != k) e.offdiagonal = std::max(e.offdiagonal, std::abs(c(j, k)));
      e.unchanged = (avg - g0).cwiseAbs().maxCoeff() <= tolerance;
      if (e.unchanged) {
        e.classification = "no effect";
      } else {
        static const char kAxes[3] = {'X', 'Y', 'Z'};
        for (int j = 0; j < 3; ++j)
          if (e.pauli_rates[static_cast<std::size_t>(j)] > tolerance) {
            if (!e.classification.empty()) e.classification += ",";
            e.classification += kAxes[j];
          }
      }
      out.push_back(e);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Clifford conjugation table

struct CliffordTableEntry {
  std::string gate;  // "CNOT" or "CZ"
  int qubit = 0;     // 0 = control, 1 = target
  char error = 'X';  // single-qubit error axis
  PauliString result;
  double sign = 1.0;
};

inline Matrix cz_matrix() {
  Matrix m = Matrix::Identity(4, 4);
  m(3, 3) = -1.0;
  return m;
}

inline Matrix cnot_matrix() { return gate_matrix(Gate::cnot(0, 1, 0.0)); }

// U P U^dag decomposed on the two-qubit Pauli basis; the image of a Pauli
// under a Clifford is a single signed Pauli string.
inline std::vector<CliffordTableEntry> clifford_conjugation_table() {
  std::vector<CliffordTableEntry> out;
  for (const std::string gate : {"CNOT", "CZ"}) {
    const Matrix u = gate == "CNOT" ? cnot_matrix() : cz_matrix();
    for (int q = 0; q < 2; ++q)
      for (char axis : {'X', 'Y', 'Z'}) {
        const auto p = PauliString::single(2, q, pauli::from_char(axis));
        const Matrix img = u * p.matrix() * u.adjoint();
        const auto terms = pauli_decomposition(img, 1e-12);
        if (terms.size() != 1) throw NumericalError("clifford_conjugation_table: image is not a single Pauli");
        out.push_back({gate, q, axis, terms[0].pauli, terms[0].coefficient > 0 ? 1.0 : -1.0});
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hamiltonian disorder

struct ParameterDelta {
  std::string name;  // e.g. "eps_s[0]", "g[0]", "v[1]"
  double delta = 0.0;
};

struct DisorderReport {
  std::vector<ParameterDelta> parameters;
  std::vector<PauliTerm> other;  // shifts not matching a model term
};

// First-order shift of the effective Hamiltonian caused by coherent errors
// and idle drift, mapped onto model parameters.
inline DisorderReport disorder_report(const NoisyCircuit& nc, double tau, const SpinModel& model,
                                      const QubitLayout& layout, double threshold = 1e-10) {
  NoisyCircuit clean = nc;
  for (auto& g : clean.gates) {
    g.coherent.clear();
    for (auto& ch : g.noise) ch.generator.drift = Matrix();
  }
  const auto with = extract_effective_lindbladian(nc, tau);
  const auto without = extract_effective_lindbladian(clean, tau);
  const Matrix dh = with.hamiltonian - without.hamiltonian;
  auto terms = pauli_decomposition(dh, threshold);

  const int n = layout.n_qubits();
  DisorderReport rep;
  auto take = [&](const PauliString& p) {
    for (auto it = terms.begin(); it != terms.end(); ++it)
      if (it->pauli == p) {
        const double c = it->coefficient;
        terms.erase(it);
        return c;
      }
    return 0.0;
  };
  auto z_on = [&](int q) { return PauliString::single(n, q, PauliLabel::Z); };
  auto pair = [&](int a, int b, PauliLabel l) {
    auto p = PauliString::single(n, a, l);
    p[b] = l;
    return p;
  };
  // -eps/2 Z, g ZZ, v XX.
  for (int i = 0; i < model.system_count(); ++i)
    rep.parameters.push_back({"eps_s[" + std::to_string(i) + "]",
                              -2.0 * take(z_on(layout.system_qubits[static_cast<std::size_t>(i)])) + 0.0});
  for (int j = 0; j < model.bath_count(); ++j)
    rep.parameters.push_back({"eps_b[" + std::to_string(j) + "]",
                              -2.0 * take(z_on(layout.bath_qubits[static_cast<std::size_t>(j)])) + 0.0});
  for (std::size_t k = 0; k < model.system_couplings.size(); ++k) {
    const auto& c = model.system_couplings[k];
    rep.parameters.push_back({"g[" + std::to_string(k) + "]",
                              take(pair(layout.system_qubits[static_cast<std::size_t>(c.a)],
                                        layout.system_qubits[static_cast<std::size_t>(c.b)], PauliLabel::Z))});
  }
  for (std::size_t k = 0; k < model.sb_couplings.size(); ++k) {
    const auto& c = model.sb_couplings[k];
    rep.parameters.push_back({"v[" + std::to_string(k) + "]",
                              take(pair(layout.system_qubits[static_cast<std::size_t>(c.a)],
                                        layout.bath_qubits[static_cast<std::size_t>(c.b)], PauliLabel::X))});
  }
  rep.other = std::move(terms);
  return rep;
}

// ---------------------------------------------------------------------------
// Report

inline const char* to_string(NoiseSource s) {
  switch (s) {
    case NoiseSource::Gate: return "gate";
    case NoiseSource::Spectator: return "spectator";
    case NoiseSource::Idle: return "idle";
  }
  return "?";
}

inline nlohmann::json report_json(const EffectiveLindbladian& eff, const NoisyCircuit& nc, double threshold = 1e-10) {
  nlohmann::json j;
  j["n_qubits"] = eff.n_qubits;
  j["tau"] = eff.tau;
  j["frame_mode"] = to_string(eff.mode);
  double total_time = 0.0;
  for (const auto& g : nc.gates) total_time += g.gate.duration;
  j["step_duration_ns"] = total_time * 1e9;
  j["jumps"] = nlohmann::json::array();
  for (const auto& ch : eff.channels)
    for (const auto& jp : ch.jumps) {
      std::string label;
      const Gate& g = nc.gates[static_cast<std::size_t>(ch.source_gate)].gate;
      nlohmann::json e{{"gate_index", ch.source_gate},
                       {"gate", to_string(g.kind)},
                       {"source", to_string(ch.source)},
                       {"qubits", ch.qubits},
                       {"rate", jp.rate}};
      // Local operator as a Pauli-string label where it is one.
      for (const auto* cand : {"-", "+", "X", "Y", "Z"}) {
        if (ch.qubits.size() == 1 && (PauliString::parse(cand).matrix() - jp.op).cwiseAbs().maxCoeff() < 1e-12)
          label = cand;
      }
      if (label.empty() && ch.qubits.size() == 2) {
        const auto terms = pauli_decomposition(jp.op, 1e-12);
        if (terms.size() == 1 && std::abs(terms[0].coefficient - 1.0) < 1e-12) label = terms[0].pauli.to_string();
      }
      e["operator"] = label.empty() ? "matrix" : label;
      j["jumps"].push_back(e);
    }
  j["qubit_pauli_rates"] = nlohmann::json::array();
  for (int q = 0; q < eff.n_qubits; ++q) {
    const auto r = qubit_pauli_rates(eff, q);
    j["qubit_pauli_rates"].push_back({{"qubit", q}, {"x", r.x}, {"y", r.y}, {"z", r.z}});
  }
  j["coherent_part"] = nlohmann::json::array();
  for (const auto& t : pauli_decomposition(eff.hamiltonian, threshold))
    j["coherent_part"].push_back({{"pauli", t.pauli.to_string()}, {"coefficient", t.coefficient}});
  return j;
}

inline nlohmann::json to_json_value(const DisorderReport& d) {
  nlohmann::json j;
  j["parameters"] = nlohmann::json::object();
  for (const auto& p : d.parameters) j["parameters"][p.name] = p.delta;
  j["other"] = nlohmann::json::array();
  for (const auto& t : d.other) j["other"].push_back({{"pauli", t.pauli.to_string()}, {"coefficient", t.coefficient}});
  return j;
}

}  // namespace noisecool

#endif  // NOISECOOL_LINDBLAD_MAP_HPP
