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

// Hardware noise: calibration ingestion, per-gate and idle noise generators,
// and attachment of noise channels to a circuit.
//
// Rates are per physical second and durations are physical seconds. Each gate
// g becomes U_g, then any coherent-error rotations, then noise channels
// e^{t_G L}. Qubits not touched by g idle for t_G (spectator idling).
//
// Idle generator per qubit:
//   damping   sigma_-  (|0><1|) at 1/T1
//   dephasing sigma_z  at gamma_z = (1/T2 - 1/(2 T1)) / 2,
// so that coherences decay as e^{-t/T2}.
//
// Gate noise: reported average infidelity eps -> depolarizing probability
// p = eps d/(d-1), realized by all d^2-1 non-identity Paulis at a common rate
// -ln(1-p)/(d^2 t_G).

#ifndef NOISECOOL_NOISE_HPP
#define NOISECOOL_NOISE_HPP

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "noisecool/circuit.hpp"
#include "noisecool/common.hpp"
#include "noisecool/density_matrix.hpp"
#include "noisecool/linalg.hpp"
#include "noisecool/model.hpp"
#include "noisecool/pauli.hpp"
#include "noisecool/superoperator.hpp"

namespace noisecool {

// Idle coherent drift is specified as a RotateZ angle per idle quantum.
inline constexpr double kIdleDriftQuantum = 35e-9;

// ---------------------------------------------------------------------------
// Calibration

struct QubitCalibration {
  double t1_us = 100.0;
  double t2_us = 100.0;
  double sx_error = 0.0;
  double x_error = 0.0;
};

struct EdgeCalibration {
  double cnot_error = 0.0;
  double duration_ns = 300.0;
};

struct CalibrationData {
  std::string name;
  double single_qubit_duration_ns = 35.5;
  std::map<int, QubitCalibration> qubits;                 // device label -> data
  std::map<std::pair<int, int>, EdgeCalibration> edges;  // (control, target) device labels

  void validate() const {
    for (const auto& [q, c] : qubits) {
      const std::string where = "calibration qubit " + std::to_string(q);
      if (!(c.t1_us > 0.0)) throw ValidationError(where + ": t1_us must be positive");
      if (!(c.t2_us > 0.0)) throw ValidationError(where + ": t2_us must be positive");
      for (double e : {c.sx_error, c.x_error})
        if (e < 0.0 || e >= 1.0) throw ValidationError(where + ": gate error outside [0, 1)");
    }
    for (const auto& [e, c] : edges) {
      const std::string where =
          "calibration edge (" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
      if (c.cnot_error < 0.0 || c.cnot_error >= 1.0)
        throw ValidationError(where + ": cnot_error outside [0, 1)");
      if (c.duration_ns < 0.0) throw ValidationError(where + ": negative duration_ns");
    }
    if (single_qubit_duration_ns < 0.0) throw ValidationError("single_qubit_duration_ns < 0");
  }

  const QubitCalibration& qubit(int label) const {
    auto it = qubits.find(label);
    if (it == qubits.end())
      throw ConfigError("calibration '" + name + "' has no entry for qubit " + std::to_string(label));
    return it->second;
  }

  // Directed lookup, falling back to the reversed edge.
  const EdgeCalibration& edge(int control, int target) const {
    auto it = edges.find({control, target});
    if (it == edges.end()) it = edges.find({target, control});
    if (it == edges.end())
      throw ConfigError("calibration '" + name + "' has no CNOT entry for edge (" +
                        std::to_string(control) + "," + std::to_string(target) + ")");
    return it->second;
  }
};

inline void to_json(nlohmann::json& j, const CalibrationData& c) {
  j = nlohmann::json{{"name", c.name}, {"single_qubit_duration_ns", c.single_qubit_duration_ns}};
  j["qubits"] = nlohmann::json::array();
  for (const auto& [q, d] : c.qubits)
    j["qubits"].push_back({{"label", q},
                           {"t1_us", d.t1_us},
                           {"t2_us", d.t2_us},
                           {"sx_error", d.sx_error},
                           {"x_error", d.x_error}});
  j["edges"] = nlohmann::json::array();
  for (const auto& [e, d] : c.edges)
    j["edges"].push_back({{"control", e.first},
                          {"target", e.second},
                          {"cnot_error", d.cnot_error},
                          {"duration_ns", d.duration_ns}});
}

inline void from_json(const nlohmann::json& j, CalibrationData& c) {
  c = CalibrationData{};
  c.name = j.value("name", std::string{});
  c.single_qubit_duration_ns = j.value("single_qubit_duration_ns", 35.5);
  for (const auto& q : j.at("qubits")) {
    QubitCalibration d;
    d.t1_us = q.at("t1_us").get<double>();
    d.t2_us = q.at("t2_us").get<double>();
    d.sx_error = q.value("sx_error", 0.0);
    d.x_error = q.value("x_error", d.sx_error);
    c.qubits[q.at("label").get<int>()] = d;
  }
  if (j.contains("edges"))
    for (const auto& e : j.at("edges")) {
      EdgeCalibration d;
      d.cnot_error = e.at("cnot_error").get<double>();
      d.duration_ns = e.at("duration_ns").get<double>();
      c.edges[{e.at("control").get<int>(), e.at("target").get<int>()}] = d;
    }
  c.validate();
}

// CNOT and single-qubit durations in circuit-qubit coordinates.
inline GateTimings gate_timings(const CalibrationData& cal, const QubitLayout& layout) {
  GateTimings t;
  t.single_qubit = cal.single_qubit_duration_ns * 1e-9;
  for (const auto& [p, q] : layout.connectivity) {
    const int dp = layout.device_label(p), dq = layout.device_label(q);
    if (cal.edges.count({dp, dq}) || cal.edges.count({dq, dp})) {
      const double d = cal.edge(dp, dq).duration_ns * 1e-9;
      t.cnot[{p, q}] = d;
      t.cnot[{q, p}] = d;
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Generators

struct NoiseTerm {
  PauliString op;  // local operator string; may contain sigma_+/-
  double rate = 0.0;
};

// Lindbladian on k local qubits: sum_t rate_t D[op_t] plus an optional
// coherent drift Hamiltonian (rad/s).
struct NoiseGenerator {
  int n_qubits = 1;
  std::vector<NoiseTerm> terms;
  Matrix drift;  // 2^k x 2^k or empty

  static NoiseGenerator zero(int k) { return NoiseGenerator{k, {}, {}}; }

  bool is_zero() const {
    for (const auto& t : terms)
      if (t.rate != 0.0) return false;
    return drift.size() == 0 || drift.cwiseAbs().maxCoeff() == 0.0;
  }

  void validate() const {
    for (const auto& t : terms) {
      if (t.op.n_qubits() != n_qubits) throw DimensionError("NoiseGenerator: term width mismatch");
      if (t.rate < 0.0 || !std::isfinite(t.rate))
        throw ValidationError("NoiseGenerator: rate must be finite and >= 0");
    }
    if (drift.size() != 0) {
      const auto d = static_cast<Eigen::Index>(dim_of(n_qubits));
      if (drift.rows() != d || drift.cols() != d) throw DimensionError("NoiseGenerator: drift size");
      if (!is_hermitian(drift, 1e-6 * (1.0 + drift.cwiseAbs().maxCoeff())))
        throw ValidationError("NoiseGenerator: drift is not Hermitian");
    }
  }

  // Jump rates scaled by s; drift untouched.
  NoiseGenerator scaled(double s) const {
    if (s < 0.0) throw ValidationError("noise scale must be >= 0");
    NoiseGenerator g = *this;
    for (auto& t : g.terms) t.rate *= s;
    return g;
  }

  std::vector<Jump> jumps() const {
    std::vector<Jump> out;
    for (const auto& t : terms)
      if (t.rate != 0.0) out.push_back({t.op.matrix(), t.rate});
    return out;
  }

  Matrix hamiltonian() const {
    const auto d = static_cast<Eigen::Index>(dim_of(n_qubits));
    return drift.size() ? drift : Matrix::Zero(d, d);
  }

  // 4^k x 4^k generator, per second.
  Matrix lindbladian() const {
    validate();
    return lindblad_superoperator(hamiltonian(), jumps()).matrix;
  }

  // Uniform depolarizing with probability p reached after t_G seconds.
  static NoiseGenerator depolarizing(int k, double p, double t_gate) {
    NoiseGenerator g = zero(k);
    if (p == 0.0) return g;
    if (p < 0.0 || p >= 1.0) throw ValidationError("depolarizing probability outside [0, 1)");
    if (!(t_gate > 0.0)) throw ValidationError("depolarizing noise needs a positive gate time");
    const double d2 = static_cast<double>(dim_of(2 * k));
    const double rate = -std::log1p(-p) / (d2 * t_gate);
    for (const auto& ps : pauli_basis(k)) {
      bool identity = true;
      for (auto f : ps.factors()) identity = identity && f == PauliLabel::I;
      if (!identity) g.terms.push_back({ps, rate});
    }
    return g;
  }

  // Damping 1/T1, dephasing to e^{-t/T2}, drift in rad/s on sigma_z / 2.
  // T2 > 2 T1 is clamped to zero pure dephasing; a note goes to `warnings`.
  static NoiseGenerator idle(double t1_s, double t2_s, double drift_rad_per_s = 0.0,
                             std::vector<std::string>* warnings = nullptr) {
    if (!(t1_s > 0.0) || !(t2_s > 0.0)) throw ValidationError("idle noise needs T1, T2 > 0");
    NoiseGenerator g = zero(1);
    g.terms.push_back({PauliString::parse("-"), 1.0 / t1_s});
    double gz = 0.5 * (1.0 / t2_s - 0.5 / t1_s);
    if (gz < 0.0) {
      if (gz < -1e-12 / t1_s && warnings)
        warnings->push_back("T2 > 2 T1 (T1=" + std::to_string(t1_s * 1e6) +
                            " us, T2=" + std::to_string(t2_s * 1e6) + " us); pure dephasing clamped to 0");
      gz = 0.0;
    }
    if (gz > 0.0) g.terms.push_back({PauliString::parse("Z"), gz});
    if (drift_rad_per_s != 0.0) g.drift = 0.5 * drift_rad_per_s * pauli::z();
    return g;
  }
};

// Depolarizing probability from average gate infidelity.
inline double depolarizing_probability(double infidelity, int k) {
  const double d = static_cast<double>(dim_of(k));
  return infidelity * d / (d - 1.0);
}

// Average gate fidelity of a depolarizing channel with probability p.
inline double depolarizing_average_fidelity(double p, int k) {
  const double d = static_cast<double>(dim_of(k));
  return 1.0 - p * (d - 1.0) / d;
}

// Places a generator on `position` of a k-qubit register.
inline NoiseGenerator lift(const NoiseGenerator& g, const std::vector<int>& positions, int k) {
  if (static_cast<int>(positions.size()) != g.n_qubits) throw DimensionError("lift: width mismatch");
  NoiseGenerator out = NoiseGenerator::zero(k);
  for (const auto& t : g.terms) {
    PauliString ps = PauliString::single(k, 0, PauliLabel::I);
    for (int i = 0; i < g.n_qubits; ++i) ps[positions[static_cast<std::size_t>(i)]] = t.op[i];
    out.terms.push_back({ps, t.rate});
  }
  if (g.drift.size()) out.drift = embed(g.drift, positions, k);
  return out;
}

inline NoiseGenerator sum(const NoiseGenerator& a, const NoiseGenerator& b) {
  if (a.n_qubits != b.n_qubits) throw DimensionError("sum: generator widths differ");
  NoiseGenerator out = a;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  if (b.drift.size()) out.drift = out.drift.size() ? Matrix(out.drift + b.drift) : b.drift;
  return out;
}

// e^{t_G L}.
inline Superoperator gate_noise_superoperator(const NoiseGenerator& gen, double t_gate) {
  if (t_gate < 0.0) throw ValidationError("gate_noise_superoperator: negative duration");
  const auto d2 = static_cast<Eigen::Index>(dim_of(2 * gen.n_qubits));
  if (t_gate == 0.0 || gen.is_zero()) return {gen.n_qubits, Matrix::Identity(d2, d2)};
  return {gen.n_qubits, matrix_exponential(t_gate * gen.lindbladian())};
}

// ---------------------------------------------------------------------------
// Noise model

// Small rotation R_axis(angle) = exp(-i angle/2 P) inserted after every gate
// of `kind`. qubit = -1 targets every qubit the gate acts on.
struct CoherentErrorSpec {
  GateKind kind = GateKind::SqrtX;
  int qubit = -1;
  PauliLabel axis = PauliLabel::X;
  double angle = 0.0;

  void validate() const {
    if (axis != PauliLabel::X && axis != PauliLabel::Y && axis != PauliLabel::Z)
      throw ValidationError("coherent error axis must be X, Y or Z");
    if (!(std::abs(angle) < kPi)) throw ValidationError("coherent error angle must satisfy |angle| < pi");
  }

  Matrix rotation() const {
    return std::cos(angle / 2) * pauli::identity() - kI * std::sin(angle / 2) * pauli::matrix(axis);
  }
};

struct NoiseModel {
  int n_qubits = 0;
  std::map<int, NoiseGenerator> idle;    // circuit qubit -> idle generator
  std::map<int, NoiseGenerator> sqrtx;   // circuit qubit -> SqrtX noise
  std::map<int, NoiseGenerator> paulix;  // circuit qubit -> PauliX noise
  std::map<std::pair<int, int>, NoiseGenerator> cnot;  // (control, target) -> 2-qubit noise
  bool missing_is_zero = false;  // uncovered entries act as the zero generator

  double scale = 1.0;          // multiplies every jump rate
  double cnot_scale = 1.0;     // extra factor on CNOT-associated noise
  bool spectator_idle = true;  // qubits not acted on idle during a gate
  bool thermal_on_active = false;  // gate qubits also get idle noise during the gate
  std::vector<CoherentErrorSpec> coherent;
  std::vector<std::string> warnings;

  static NoiseModel noiseless(int n) {
    NoiseModel m;
    m.n_qubits = n;
    m.missing_is_zero = true;
    return m;
  }

  void validate() const {
    if (scale < 0.0 || cnot_scale < 0.0) throw ValidationError("noise scales must be >= 0");
    for (const auto& c : coherent) c.validate();
    for (const auto* table : {&idle, &sqrtx, &paulix})
      for (const auto& [q, g] : *table) {
        if (q < 0 || q >= n_qubits) throw ValidationError("noise entry for qubit out of range");
        if (g.n_qubits != 1) throw DimensionError("single-qubit noise entry must act on 1 qubit");
        g.validate();
      }
    for (const auto& [e, g] : cnot) {
      if (g.n_qubits != 2) throw DimensionError("CNOT noise entry must act on 2 qubits");
      g.validate();
    }
  }

  const NoiseGenerator& idle_for(int q) const { return lookup(idle, q, "idle"); }

  // Noise generator of a gate on its own qubits (scales not applied).
  NoiseGenerator gate_generator(const Gate& g) const {
    switch (g.kind) {
      case GateKind::SqrtX: return lookup(sqrtx, g.qubits[0], "SqrtX");
      case GateKind::PauliX: return lookup(paulix, g.qubits[0], "PauliX");
      case GateKind::CNOT: {
        auto it = cnot.find({g.qubits[0], g.qubits[1]});
        if (it != cnot.end()) return it->second;
        if (missing_is_zero) return NoiseGenerator::zero(2);
        throw ConfigError("noise model has no CNOT entry for (" + std::to_string(g.qubits[0]) + "," +
                          std::to_string(g.qubits[1]) + ")");
      }
      case GateKind::RotateZ:
      case GateKind::Idle: break;
    }
    return NoiseGenerator::zero(static_cast<int>(g.qubits.size()));
  }

 private:
  const NoiseGenerator& lookup(const std::map<int, NoiseGenerator>& table, int q,
                               const char* what) const {
    static const NoiseGenerator kZero = NoiseGenerator::zero(1);
    auto it = table.find(q);
    if (it != table.end()) return it->second;
    if (missing_is_zero) return kZero;
    throw ConfigError(std::string("noise model has no ") + what + " entry for qubit " + std::to_string(q));
  }
};

// Knobs applied when turning calibration data into a NoiseModel.
struct NoisePolicy {
  double scale = 1.0;
  double cnot_scale = 1.0;
  bool spectator_idle = true;
  bool thermal_on_active = false;
  std::map<int, double> idle_drift;  // circuit qubit -> RotateZ angle per idle quantum
  std::vector<CoherentErrorSpec> coherent;
};

inline NoiseModel calibration_to_noise_model(const CalibrationData& cal, const QubitLayout& layout,
                                             const NoisePolicy& policy = {}) {
  cal.validate();
  NoiseModel m;
  m.n_qubits = layout.n_qubits();
  m.scale = policy.scale;
  m.cnot_scale = policy.cnot_scale;
  m.spectator_idle = policy.spectator_idle;
  m.thermal_on_active = policy.thermal_on_active;
  m.coherent = policy.coherent;
  const double t_single = cal.single_qubit_duration_ns * 1e-9;
  for (int q = 0; q < m.n_qubits; ++q) {
    const auto& qc = cal.qubit(layout.device_label(q));
    double drift = 0.0;
    if (auto it = policy.idle_drift.find(q); it != policy.idle_drift.end())
      drift = it->second / kIdleDriftQuantum;
    m.idle[q] = NoiseGenerator::idle(qc.t1_us * 1e-6, qc.t2_us * 1e-6, drift, &m.warnings);
    m.sqrtx[q] = NoiseGenerator::depolarizing(1, depolarizing_probability(qc.sx_error, 1), t_single);
    m.paulix[q] = NoiseGenerator::depolarizing(1, depolarizing_probability(qc.x_error, 1), t_single);
  }
  for (const auto& [p, q] : layout.connectivity) {
    for (auto [c, t] : {std::pair{p, q}, std::pair{q, p}}) {
      const auto& ec = cal.edge(layout.device_label(c), layout.device_label(t));
      m.cnot[{c, t}] =
          NoiseGenerator::depolarizing(2, depolarizing_probability(ec.cnot_error, 2), ec.duration_ns * 1e-9);
    }
  }
  m.validate();
  return m;
}

// ---------------------------------------------------------------------------
// Attachment

enum class NoiseSource { Gate, Spectator, Idle };

struct LocalChannel {
  std::vector<int> qubits;
  NoiseGenerator generator;  // already scaled, per second
  double duration = 0.0;
  Matrix superop;  // e^{duration * L}
  NoiseSource source = NoiseSource::Gate;
};

struct LocalUnitary {
  std::vector<int> qubits;
  Matrix matrix;
};

struct NoisyGate {
  Gate gate;
  Matrix unitary;                     // on gate.qubits; empty for Idle
  std::vector<LocalUnitary> coherent;  // applied after the gate
  std::vector<LocalChannel> noise;     // applied after the coherent errors
};

struct NoisyCircuit {
  int n_qubits = 0;
  std::vector<NoisyGate> gates;

  double duration() const {
    double t = 0.0;
    for (const auto& g : gates) t += g.gate.duration;
    return t;
  }
};

namespace detail {

inline LocalChannel make_channel(std::vector<int> qubits, NoiseGenerator gen, double t, NoiseSource src) {
  LocalChannel ch;
  ch.superop = gate_noise_superoperator(gen, t).matrix;
  ch.qubits = std::move(qubits);
  ch.generator = std::move(gen);
  ch.duration = t;
  ch.source = src;
  return ch;
}

}  // namespace detail

inline NoisyCircuit attach_noise(const Circuit& c, const NoiseModel& nm) {
  c.validate();
  nm.validate();
  if (nm.n_qubits != c.n_qubits)
    throw DimensionError("attach_noise: noise model covers " + std::to_string(nm.n_qubits) +
                         " qubits, circuit has " + std::to_string(c.n_qubits));
  NoisyCircuit out;
  out.n_qubits = c.n_qubits;
  for (const auto& g : c.gates) {
    NoisyGate ng;
    ng.gate = g;
    if (g.kind != GateKind::Idle) ng.unitary = gate_matrix(g);

    for (const auto& ce : nm.coherent) {
      if (ce.kind != g.kind) continue;
      for (int q : g.qubits)
        if ((ce.qubit < 0 || ce.qubit == q) && ce.angle != 0.0) ng.coherent.push_back({{q}, ce.rotation()});
    }

    const double t = g.duration;
    if (t > 0.0) {
      if (g.kind == GateKind::Idle) {
        for (int q : g.qubits) {
          auto gen = nm.idle_for(q).scaled(nm.scale);
          if (!gen.is_zero()) ng.noise.push_back(detail::make_channel({q}, std::move(gen), t, NoiseSource::Idle));
        }
      } else {
        const int k = static_cast<int>(g.qubits.size());
        NoiseGenerator gen = nm.gate_generator(g);
        if (nm.thermal_on_active)
          for (int i = 0; i < k; ++i) gen = sum(gen, lift(nm.idle_for(g.qubits[static_cast<std::size_t>(i)]), {i}, k));
        double s = nm.scale;
        if (g.kind == GateKind::CNOT) s *= nm.cnot_scale;
        gen = gen.scaled(s);
        if (!gen.is_zero()) ng.noise.push_back(detail::make_channel(g.qubits, std::move(gen), t, NoiseSource::Gate));
      }
      if (nm.spectator_idle) {
        for (int q = 0; q < c.n_qubits; ++q) {
          if (std::find(g.qubits.begin(), g.qubits.end(), q) != g.qubits.end()) continue;
          auto gen = nm.idle_for(q).scaled(nm.scale);
          if (!gen.is_zero())
            ng.noise.push_back(detail::make_channel({q}, std::move(gen), t, NoiseSource::Spectator));
        }
      }
    }
    out.gates.push_back(std::move(ng));
  }
  return out;
}

// rho <- noisy circuit applied to rho, in place.
inline void apply_noisy_circuit(Matrix& rho, const NoisyCircuit& nc) {
  for (const auto& ng : nc.gates) {
    if (ng.unitary.size()) apply_unitary_local(rho, ng.unitary, ng.gate.qubits, nc.n_qubits);
    for (const auto& u : ng.coherent) apply_unitary_local(rho, u.matrix, u.qubits, nc.n_qubits);
    for (const auto& ch : ng.noise) apply_superop_local(rho, ch.superop, ch.qubits, nc.n_qubits);
  }
}

inline DensityMatrix apply_noisy_circuit(const DensityMatrix& rho, const NoisyCircuit& nc) {
  if (rho.n_qubits() != nc.n_qubits) throw DimensionError("apply_noisy_circuit: qubit count mismatch");
  Matrix m = rho.matrix();
  apply_noisy_circuit(m, nc);
  return DensityMatrix::unchecked(std::move(m));
}

// Full 4^n superoperator of a noisy circuit (small n only).
inline Superoperator noisy_circuit_superoperator(const NoisyCircuit& nc) {
  if (nc.n_qubits > 5) throw DimensionError("noisy_circuit_superoperator: too many qubits for dense form");
  const auto d = static_cast<Eigen::Index>(dim_of(nc.n_qubits));
  Matrix s(d * d, d * d);
  for (Eigen::Index col = 0; col < d * d; ++col) {
    Matrix basis = Matrix::Zero(d, d);
    basis(col % d, col / d) = 1.0;
    apply_noisy_circuit(basis, nc);
    s.col(col) = vec(basis);
  }
  return {nc.n_qubits, std::move(s)};
}

// ---------------------------------------------------------------------------
// Parameter overrides (fitted Hamiltonian parameters and noise scales).

struct ParameterOverrides {
  std::optional<double> noise_scale;
  std::optional<double> cnot_noise_scale;
  std::optional<double> bath_shift;  // RotateZ angle per step on every bath qubit
  std::optional<std::vector<double>> system_splittings;
  std::optional<std::vector<double>> bath_splittings;
  std::optional<std::vector<double>> system_couplings;  // g values, declared order
  std::optional<std::vector<double>> sb_couplings;      // v values, declared order
  std::optional<double> sb_coupling_all;                // uniform v
  std::map<int, double> idle_drift;                     // circuit qubit -> angle per quantum
  std::vector<CoherentErrorSpec> coherent;

  void apply(SpinModel& model, TrotterPlan* plan, NoisePolicy* policy) const {
    auto replace = [](std::vector<double>& dst, const std::vector<double>& src, const char* what) {
      if (src.size() != dst.size())
        throw ConfigError(std::string("overrides.") + what + ": expected " + std::to_string(dst.size()) +
                          " values, got " + std::to_string(src.size()));
      dst = src;
    };
    auto replace_couplings = [](std::vector<Coupling>& dst, const std::vector<double>& src, const char* what) {
      if (src.size() != dst.size())
        throw ConfigError(std::string("overrides.") + what + ": expected " + std::to_string(dst.size()) +
                          " values, got " + std::to_string(src.size()));
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i].value = src[i];
    };
    if (system_splittings) replace(model.system_splittings, *system_splittings, "system_splittings");
    if (bath_splittings) replace(model.bath_splittings, *bath_splittings, "bath_splittings");
    if (system_couplings) replace_couplings(model.system_couplings, *system_couplings, "system_couplings");
    if (sb_coupling_all)
      for (auto& c : model.sb_couplings) c.value = *sb_coupling_all;
    if (sb_couplings) replace_couplings(model.sb_couplings, *sb_couplings, "sb_couplings");
    if (plan) {
      plan->model = model;
      if (bath_shift) plan->bath_shift = *bath_shift;
    }
    if (policy) {
      if (noise_scale) policy->scale = *noise_scale;
      if (cnot_noise_scale) policy->cnot_scale = *cnot_noise_scale;
      for (const auto& [q, a] : idle_drift) policy->idle_drift[q] = a;
      policy->coherent.insert(policy->coherent.end(), coherent.begin(), coherent.end());
    }
  }
};

inline void to_json(nlohmann::json& j, const CoherentErrorSpec& c) {
  j = nlohmann::json{{"gate", to_string(c.kind)},
                     {"qubit", c.qubit},
                     {"axis", std::string(1, pauli::to_char(c.axis))},
                     {"angle", c.angle}};
}

inline void from_json(const nlohmann::json& j, CoherentErrorSpec& c) {
  c = CoherentErrorSpec{};
  c.kind = gate_kind_from_string(j.at("gate").get<std::string>());
  c.qubit = j.value("qubit", -1);
  const auto axis = j.value("axis", std::string("X"));
  if (axis.size() != 1) throw ConfigError("coherent error axis must be one of X, Y, Z");
  c.axis = pauli::from_char(axis[0]);
  c.angle = j.at("angle").get<double>();
  c.validate();
}

inline void to_json(nlohmann::json& j, const ParameterOverrides& o) {
  j = nlohmann::json::object();
  if (o.noise_scale) j["noise_scale"] = *o.noise_scale;
  if (o.cnot_noise_scale) j["cnot_noise_scale"] = *o.cnot_noise_scale;
  if (o.bath_shift) j["bath_shift"] = *o.bath_shift;
  if (o.system_splittings) j["system_splittings"] = *o.system_splittings;
  if (o.bath_splittings) j["bath_splittings"] = *o.bath_splittings;
  if (o.system_couplings) j["system_couplings"] = *o.system_couplings;
  if (o.sb_couplings) j["sb_couplings"] = *o.sb_couplings;
  if (o.sb_coupling_all) j["sb_coupling_all"] = *o.sb_coupling_all;
  if (!o.idle_drift.empty()) {
    auto& d = j["idle_drift"] = nlohmann::json::object();
    for (const auto& [q, a] : o.idle_drift) d[std::to_string(q)] = a;
  }
  if (!o.coherent.empty()) j["coherent_errors"] = o.coherent;
}

inline void from_json(const nlohmann::json& j, ParameterOverrides& o) {
  static const std::vector<std::string> known{"noise_scale",      "cnot_noise_scale", "bath_shift",
                                              "system_splittings", "bath_splittings", "system_couplings",
                                              "sb_couplings",     "sb_coupling_all",  "idle_drift",
                                              "coherent_errors"};
  for (const auto& [k, v] : j.items())
    if (std::find(known.begin(), known.end(), k) == known.end())
      throw ConfigError("overrides: unknown field '" + k + "'");
  o = ParameterOverrides{};
  auto opt = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<typename std::decay_t<decltype(field)>::value_type>();
  };
  opt("noise_scale", o.noise_scale);
  opt("cnot_noise_scale", o.cnot_noise_scale);
  opt("bath_shift", o.bath_shift);
  opt("system_splittings", o.system_splittings);
  opt("bath_splittings", o.bath_splittings);
  opt("system_couplings", o.system_couplings);
  opt("sb_couplings", o.sb_couplings);
  opt("sb_coupling_all", o.sb_coupling_all);
  if (j.contains("idle_drift"))
    for (const auto& [k, v] : j.at("idle_drift").items()) o.idle_drift[std::stoi(k)] = v.get<double>();
  if (j.contains("coherent_errors")) j.at("coherent_errors").get_to(o.coherent);
  if (o.noise_scale && *o.noise_scale < 0) throw ConfigError("overrides.noise_scale must be >= 0");
  if (o.cnot_noise_scale && *o.cnot_noise_scale < 0) throw ConfigError("overrides.cnot_noise_scale must be >= 0");
}

}  // namespace noisecool

#endif  // NOISECOOL_NOISE_HPP
