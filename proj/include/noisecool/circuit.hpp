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

// Native-gate circuits and the Trotter compiler.
//
// Native gates: RotateZ(theta) = diag(e^{-i theta/2}, e^{i theta/2}) (virtual,
// zero duration), SqrtX, PauliX, CNOT(control, target) and Idle.
//
// Angle convention: every printed rotation angle is parameter * tau, i.e.
//   Z term   -eps/2 Z      -> RotateZ(-eps tau)
//   ZZ term  g Z_c Z_t     -> CNOT . RotateZ(2 g tau)_t . CNOT
//   XX term  v X_s X_b     -> CNOT . [Rz(pi/2) SX Rz(2 v tau - pi) SX Rz(pi/2)]_s . CNOT
// With tau = 1 these reduce to the angles printed on the device circuits.

#ifndef NOISECOOL_CIRCUIT_HPP
#define NOISECOOL_CIRCUIT_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "noisecool/common.hpp"
#include "noisecool/linalg.hpp"
#include "noisecool/model.hpp"
#include "noisecool/pauli.hpp"

namespace noisecool {

class CompilationError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

enum class GateKind { RotateZ, SqrtX, PauliX, CNOT, Idle };

inline const char* to_string(GateKind k) {
  switch (k) {
    case GateKind::RotateZ: return "RotateZ";
    case GateKind::SqrtX: return "SqrtX";
    case GateKind::PauliX: return "PauliX";
    case GateKind::CNOT: return "CNOT";
    case GateKind::Idle: return "Idle";
  }
  return "?";
}

inline GateKind gate_kind_from_string(const std::string& s) {
  if (s == "RotateZ") return GateKind::RotateZ;
  if (s == "SqrtX") return GateKind::SqrtX;
  if (s == "PauliX") return GateKind::PauliX;
  if (s == "CNOT") return GateKind::CNOT;
  if (s == "Idle") return GateKind::Idle;
  throw ConfigError("unknown gate kind '" + s + "'");
}

inline constexpr double kSingleQubitGateTime = 35.5e-9;

struct Gate {
  GateKind kind = GateKind::Idle;
  std::vector<int> qubits;  // CNOT: {control, target}; Idle: every idling qubit
  double angle = 0.0;       // radians, RotateZ only
  double duration = 0.0;    // physical seconds
  // Decomposition block: gates of one Hamiltonian-term decomposition share an
  // id >= 0. Structural gates (flips, idling, probes) carry -1.
  int block = -1;

  static Gate rz(int q, double angle, int block = -1) {
    return {GateKind::RotateZ, {q}, angle, 0.0, block};
  }
  static Gate sx(int q, int block = -1) {
    return {GateKind::SqrtX, {q}, 0.0, kSingleQubitGateTime, block};
  }
  static Gate x(int q, int block = -1) {
    return {GateKind::PauliX, {q}, 0.0, kSingleQubitGateTime, block};
  }
  static Gate cnot(int control, int target, double duration, int block = -1) {
    return {GateKind::CNOT, {control, target}, 0.0, duration, block};
  }
  static Gate idle(std::vector<int> qubits, double duration) {
    return {GateKind::Idle, std::move(qubits), 0.0, duration, -1};
  }
};

// Unitary of a gate on its own qubits (Idle: identity).
inline Matrix gate_matrix(const Gate& g) {
  switch (g.kind) {
    case GateKind::RotateZ: {
      Matrix m = Matrix::Zero(2, 2);
      m(0, 0) = std::exp(-kI * g.angle / 2.0);
      m(1, 1) = std::exp(kI * g.angle / 2.0);
      return m;
    }
    case GateKind::SqrtX: {
      Matrix m(2, 2);
      m << cplx(0.5, 0.5), cplx(0.5, -0.5), cplx(0.5, -0.5), cplx(0.5, 0.5);
      return m;
    }
    case GateKind::PauliX: return pauli::x();
    case GateKind::CNOT: {
      Matrix m = Matrix::Zero(4, 4);
      m(0, 0) = m(1, 1) = 1.0;
      m(2, 3) = m(3, 2) = 1.0;
      return m;
    }
    case GateKind::Idle: {
      const auto d = static_cast<Eigen::Index>(dim_of(static_cast<int>(g.qubits.size())));
      return Matrix::Identity(d, d);
    }
  }
  return {};
}

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;
  std::map<std::string, std::string> metadata;

  void validate() const {
    for (std::size_t i = 0; i < gates.size(); ++i) {
      const auto& g = gates[i];
      const std::size_t want = g.kind == GateKind::CNOT ? 2 : 1;
      if (g.kind != GateKind::Idle && g.qubits.size() != want)
        throw ValidationError("gate " + std::to_string(i) + " (" + to_string(g.kind) +
                              ") has wrong qubit count");
      for (int q : g.qubits)
        if (q < 0 || q >= n_qubits)
          throw ValidationError("gate " + std::to_string(i) + " uses qubit " + std::to_string(q) +
                                " outside [0, " + std::to_string(n_qubits) + ")");
      if (g.kind == GateKind::CNOT && g.qubits[0] == g.qubits[1])
        throw ValidationError("gate " + std::to_string(i) + ": CNOT control equals target");
      if (g.duration < 0.0) throw ValidationError("gate " + std::to_string(i) + ": negative duration");
    }
  }

  double duration() const {
    double t = 0.0;
    for (const auto& g : gates) t += g.duration;
    return t;
  }

  int max_block() const {
    int b = -1;
    for (const auto& g : gates) b = std::max(b, g.block);
    return b;
  }
};

// Joins circuits in order, keeping block ids distinct.
inline Circuit concatenate(const std::vector<Circuit>& parts) {
  Circuit out;
  int offset = 0;
  for (const auto& c : parts) {
    out.n_qubits = std::max(out.n_qubits, c.n_qubits);
    for (auto g : c.gates) {
      if (g.block >= 0) g.block += offset;
      out.gates.push_back(std::move(g));
    }
    offset += c.max_block() + 1;
  }
  if (!parts.empty()) out.metadata = parts.front().metadata;
  return out;
}

// Ordered product of gate unitaries (first gate rightmost).
inline Matrix circuit_unitary(const Circuit& c) {
  c.validate();
  const auto d = static_cast<Eigen::Index>(dim_of(c.n_qubits));
  Matrix u = Matrix::Identity(d, d);
  for (const auto& g : c.gates) {
    if (g.kind == GateKind::Idle) continue;
    apply_left_local(u, gate_matrix(g), g.qubits, c.n_qubits);
  }
  return u;
}

// ---------------------------------------------------------------------------
// Trotter compiler

struct GateTimings {
  double single_qubit = kSingleQubitGateTime;
  double default_cnot = 300e-9;
  std::map<std::pair<int, int>, double> cnot;  // (control, target) circuit qubits

  double cnot_time(int control, int target) const {
    auto it = cnot.find({control, target});
    return it == cnot.end() ? default_cnot : it->second;
  }
};

enum class FlipAxis { X, Y, Z };

inline const char* to_string(FlipAxis a) {
  switch (a) {
    case FlipAxis::X: return "X";
    case FlipAxis::Y: return "Y";
    case FlipAxis::Z: return "Z";
  }
  return "?";
}

enum class Parity { Even, Odd };

struct TrotterPlan {
  SpinModel model;
  QubitLayout layout;
  double tau = 1.0;
  double extra_idle = 0.0;  // seconds per idle phase
  int idle_phases = 1;      // idle phases appended per step (when extra_idle > 0)
  bool symmetrize = true;
  FlipAxis flip_axis = FlipAxis::X;
  int steps = 1;
  // Extra RotateZ(-bath_shift) on every bath qubit each step, i.e. an
  // effective eps_b -> eps_b + bath_shift / tau.
  double bath_shift = 0.0;
  GateTimings timings;

  void validate() const {
    if (!(tau > 0.0)) throw ValidationError("TrotterPlan: tau must be positive");
    if (steps < 0) throw ValidationError("TrotterPlan: steps must be >= 0");
    if (extra_idle < 0.0) throw ValidationError("TrotterPlan: extra_idle must be >= 0");
    if (idle_phases < 0) throw ValidationError("TrotterPlan: idle_phases must be >= 0");
    model.validate();
    layout.validate(model);
  }
};

namespace detail {

// Sign picked up by a Hamiltonian term when every system qubit is conjugated
// by the flip Pauli.
inline double flip_sign_z(FlipAxis a) { return a == FlipAxis::Z ? 1.0 : -1.0; }
inline double flip_sign_x(FlipAxis a) { return a == FlipAxis::X ? 1.0 : -1.0; }

inline void require_edge(const QubitLayout& layout, int p, int q) {
  if (!layout.connected(p, q))
    throw CompilationError("missing connectivity edge (" + std::to_string(p) + "," +
                           std::to_string(q) + ")");
}

}  // namespace detail

// One Trotter step. With symmetrize, the step ends with a flip on every system
// qubit; odd steps negate the Hamiltonian terms that anticommute with the flip
// so that flip . U_odd . flip equals the plain step.
inline Circuit trotter_step(const TrotterPlan& plan, Parity parity) {
  plan.validate();
  const auto& m = plan.model;
  const auto& lay = plan.layout;
  const double tau = plan.tau;
  const bool flipped = plan.symmetrize && parity == Parity::Odd;
  const double sz = flipped ? detail::flip_sign_z(plan.flip_axis) : 1.0;
  const double sx = flipped ? detail::flip_sign_x(plan.flip_axis) : 1.0;

  Circuit c;
  c.n_qubits = lay.n_qubits();
  c.metadata["parity"] = parity == Parity::Even ? "even" : "odd";
  int block = 0;

  for (int i = 0; i < m.system_count(); ++i)
    c.gates.push_back(Gate::rz(lay.system_qubits[static_cast<std::size_t>(i)],
                               -sz * m.system_splittings[static_cast<std::size_t>(i)] * tau, block++));
  for (int j = 0; j < m.bath_count(); ++j)
    c.gates.push_back(Gate::rz(lay.bath_qubits[static_cast<std::size_t>(j)],
                               -m.bath_splittings[static_cast<std::size_t>(j)] * tau, block++));
  if (plan.bath_shift != 0.0)
    for (int j = 0; j < m.bath_count(); ++j)
      c.gates.push_back(Gate::rz(lay.bath_qubits[static_cast<std::size_t>(j)], -plan.bath_shift));

  for (const auto& cp : m.system_couplings) {
    const int ctrl = lay.system_qubits[static_cast<std::size_t>(cp.a)];
    const int targ = lay.system_qubits[static_cast<std::size_t>(cp.b)];
    detail::require_edge(lay, ctrl, targ);
    const double t_cx = plan.timings.cnot_time(ctrl, targ);
    c.gates.push_back(Gate::cnot(ctrl, targ, t_cx, block));
    c.gates.push_back(Gate::rz(targ, 2.0 * cp.value * tau, block));
    c.gates.push_back(Gate::cnot(ctrl, targ, t_cx, block));
    ++block;
  }

  for (const auto& cp : m.sb_couplings) {
    const int s = lay.system_qubits[static_cast<std::size_t>(cp.a)];
    const int b = lay.bath_qubits[static_cast<std::size_t>(cp.b)];
    detail::require_edge(lay, s, b);
    const double t_cx = plan.timings.cnot_time(s, b);
    const double theta = 2.0 * sx * cp.value * tau;
    c.gates.push_back(Gate::cnot(s, b, t_cx, block));
    c.gates.push_back(Gate::rz(s, kPi / 2, block));
    c.gates.push_back(Gate::sx(s, block));
    c.gates.push_back(Gate::rz(s, theta - kPi, block));
    c.gates.push_back(Gate::sx(s, block));
    c.gates.push_back(Gate::rz(s, kPi / 2, block));
    c.gates.push_back(Gate::cnot(s, b, t_cx, block));
    ++block;
  }
  for (auto& g : c.gates)
    if (g.kind == GateKind::SqrtX || g.kind == GateKind::PauliX) g.duration = plan.timings.single_qubit;

  if (plan.extra_idle > 0.0) {
    std::vector<int> all(static_cast<std::size_t>(c.n_qubits));
    for (int q = 0; q < c.n_qubits; ++q) all[static_cast<std::size_t>(q)] = q;
    for (int k = 0; k < plan.idle_phases; ++k) c.gates.push_back(Gate::idle(all, plan.extra_idle));
  }

  if (plan.symmetrize) {
    for (int q : lay.system_qubits) {
      switch (plan.flip_axis) {
        case FlipAxis::X: c.gates.push_back(Gate::x(q)); break;
        case FlipAxis::Y:  // Y ~ X . Rz(pi)
          c.gates.push_back(Gate::rz(q, kPi));
          c.gates.push_back(Gate::x(q));
          break;
        case FlipAxis::Z: c.gates.push_back(Gate::rz(q, kPi)); break;
      }
      c.gates.back().duration = c.gates.back().kind == GateKind::PauliX ? plan.timings.single_qubit : 0.0;
    }
  }
  c.validate();
  return c;
}

// Steps alternate even/odd when symmetrizing; otherwise every step is plain.
inline std::vector<Circuit> full_sequence(const TrotterPlan& plan) {
  plan.validate();
  if (plan.steps < 1) throw ValidationError("full_sequence: need at least one step");
  std::vector<Circuit> out;
  const Circuit even = trotter_step(plan, Parity::Even);
  const Circuit odd = plan.symmetrize ? trotter_step(plan, Parity::Odd) : even;
  for (int k = 0; k < plan.steps; ++k) {
    Circuit c = (k % 2 == 0) ? even : odd;
    c.metadata["step"] = std::to_string(k);
    out.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Characterization probes

enum class ProbeKind { IdleDecay, IdleDephase, SqrtXCycle, XCycle, CnotCycle };

inline ProbeKind probe_kind_from_string(const std::string& s) {
  if (s == "idle_decay") return ProbeKind::IdleDecay;
  if (s == "idle_dephase") return ProbeKind::IdleDephase;
  if (s == "sqrtx_cycle") return ProbeKind::SqrtXCycle;
  if (s == "x_cycle") return ProbeKind::XCycle;
  if (s == "cnot_cycle") return ProbeKind::CnotCycle;
  throw ConfigError("unknown characterization kind '" + s +
                    "' (idle_decay, idle_dephase, sqrtx_cycle, x_cycle, cnot_cycle)");
}

struct ProbeParams {
  int steps = 10;
  double idle = 1e-6;  // seconds of idling per step (idle probes)
  double cnot_duration = 300e-9;
};

// Element 0 prepares the probe state; elements 1..steps are the repeated
// blocks. metadata["measure"] names the measured Pauli per qubit.
inline std::vector<Circuit> characterization_circuit(ProbeKind kind, const ProbeParams& params) {
  if (params.steps < 0) throw ValidationError("characterization_circuit: negative step count");
  Circuit prep;
  Circuit step;
  switch (kind) {
    case ProbeKind::IdleDecay:
    case ProbeKind::IdleDephase:
      prep.n_qubits = step.n_qubits = 1;
      // Rz(pi/2) SX Rz(pi/2) ~ Hadamard: |0> -> |+>.
      prep.gates = {Gate::rz(0, kPi / 2), Gate::sx(0), Gate::rz(0, kPi / 2)};
      step.gates = {Gate::idle({0}, params.idle)};
      step.metadata["measure"] = kind == ProbeKind::IdleDecay ? "Z" : "X";
      break;
    case ProbeKind::SqrtXCycle:
      prep.n_qubits = step.n_qubits = 1;
      step.gates = {Gate::sx(0), Gate::sx(0), Gate::sx(0), Gate::sx(0)};
      step.metadata["measure"] = "Z";
      break;
    case ProbeKind::XCycle:
      prep.n_qubits = step.n_qubits = 1;
      step.gates = {Gate::x(0), Gate::x(0)};
      step.metadata["measure"] = "Z";
      break;
    case ProbeKind::CnotCycle:
      prep.n_qubits = step.n_qubits = 2;
      step.gates = {Gate::cnot(0, 1, params.cnot_duration), Gate::cnot(0, 1, params.cnot_duration)};
      step.metadata["measure"] = "ZZ";
      break;
  }
  prep.metadata["role"] = "prep";
  prep.metadata["measure"] = step.metadata["measure"];
  step.metadata["role"] = "probe";
  std::vector<Circuit> out{prep};
  for (int k = 0; k < params.steps; ++k) out.push_back(step);
  return out;
}

// ---------------------------------------------------------------------------
// JSON

inline void to_json(nlohmann::json& j, const Gate& g) {
  j = nlohmann::json{{"kind", to_string(g.kind)}, {"qubits", g.qubits}, {"duration_ns", g.duration * 1e9}};
  if (g.kind == GateKind::RotateZ) j["angle"] = g.angle;
  if (g.block >= 0) j["block"] = g.block;
}

inline void from_json(const nlohmann::json& j, Gate& g) {
  g = Gate{};
  g.kind = gate_kind_from_string(j.at("kind").get<std::string>());
  j.at("qubits").get_to(g.qubits);
  g.angle = j.value("angle", 0.0);
  g.duration = j.value("duration_ns", 0.0) * 1e-9;
  g.block = j.value("block", -1);
}

inline void to_json(nlohmann::json& j, const Circuit& c) {
  j = nlohmann::json{{"n_qubits", c.n_qubits}, {"gates", c.gates}, {"metadata", c.metadata}};
}

inline void from_json(const nlohmann::json& j, Circuit& c) {
  c = Circuit{};
  c.n_qubits = j.at("n_qubits").get<int>();
  j.at("gates").get_to(c.gates);
  if (j.contains("metadata")) j.at("metadata").get_to(c.metadata);
  c.validate();
}

}  // namespace noisecool

#endif  // NOISECOOL_CIRCUIT_HPP
