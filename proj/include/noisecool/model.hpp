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

// System-bath spin model:
//   H   = H_S + H_B + H_C
//   H_S = -sum_i eps_s,i/2 Z_i + sum_<ii'> g_ii' Z_i Z_i'
//   H_B = -sum_j eps_b,j/2 Z_j
//   H_C =  sum_ij v_ij X_i X_j
// Units: hbar = 1, energies per simulated time unit.

#ifndef NOISECOOL_MODEL_HPP
#define NOISECOOL_MODEL_HPP

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "noisecool/common.hpp"
#include "noisecool/linalg.hpp"
#include "noisecool/pauli.hpp"

namespace noisecool {

// For system couplings `a` is the CNOT control and `b` the target in compiled
// circuits. For system-bath couplings `a` is the system spin, `b` the bath spin.
struct Coupling {
  int a = 0;
  int b = 0;
  double value = 0.0;
};

struct SpinModel {
  std::vector<double> system_splittings;
  std::vector<double> bath_splittings;
  std::vector<Coupling> system_couplings;
  std::vector<Coupling> sb_couplings;

  int system_count() const { return static_cast<int>(system_splittings.size()); }
  int bath_count() const { return static_cast<int>(bath_splittings.size()); }
  int total_count() const { return system_count() + bath_count(); }

  void validate() const {
    for (const auto& c : system_couplings) {
      if (c.a < 0 || c.b < 0 || c.a >= system_count() || c.b >= system_count())
        throw ValidationError("system coupling references spin outside [0, " +
                              std::to_string(system_count()) + ")");
      if (std::abs(c.a - c.b) != 1)
        throw ValidationError("system coupling (" + std::to_string(c.a) + "," + std::to_string(c.b) +
                              ") is not nearest-neighbour in chain order");
    }
    for (const auto& c : sb_couplings) {
      if (c.a < 0 || c.a >= system_count())
        throw ValidationError("system-bath coupling references system spin " + std::to_string(c.a));
      if (c.b < 0 || c.b >= bath_count())
        throw ValidationError("system-bath coupling references bath spin " + std::to_string(c.b));
    }
  }
};

struct QubitLayout {
  std::vector<int> system_qubits;  // circuit qubit of each system spin
  std::vector<int> bath_qubits;    // circuit qubit of each bath spin
  std::vector<std::pair<int, int>> connectivity;  // undirected circuit edges
  std::vector<int> device_labels;  // device qubit per circuit qubit (optional)

  int n_qubits() const { return static_cast<int>(system_qubits.size() + bath_qubits.size()); }

  int device_label(int circuit_qubit) const {
    if (device_labels.empty()) return circuit_qubit;
    return device_labels.at(static_cast<std::size_t>(circuit_qubit));
  }

  bool connected(int p, int q) const {
    return std::any_of(connectivity.begin(), connectivity.end(), [&](const auto& e) {
      return (e.first == p && e.second == q) || (e.first == q && e.second == p);
    });
  }

  void validate(const SpinModel& model) const {
    if (static_cast<int>(system_qubits.size()) != model.system_count() ||
        static_cast<int>(bath_qubits.size()) != model.bath_count())
      throw ValidationError("layout does not cover the model's spins");
    std::set<int> seen;
    for (int q : system_qubits) seen.insert(q);
    for (int q : bath_qubits) seen.insert(q);
    if (static_cast<int>(seen.size()) != n_qubits())
      throw ValidationError("system and bath qubit sets overlap or repeat");
    for (int q : seen)
      if (q < 0 || q >= n_qubits())
        throw ValidationError("layout qubit " + std::to_string(q) + " outside [0, n_qubits)");
    if (!device_labels.empty() && static_cast<int>(device_labels.size()) != n_qubits())
      throw ValidationError("device_labels must list one label per circuit qubit");
  }

  // Logical spin index (system first, then bath) -> circuit qubit.
  std::vector<int> logical_to_circuit() const {
    std::vector<int> out(system_qubits);
    out.insert(out.end(), bath_qubits.begin(), bath_qubits.end());
    return out;
  }
};

// Default layout: system spins on qubits [0, S), bath spins on [S, S+B),
// all coupled pairs connected.
inline QubitLayout logical_layout(const SpinModel& model) {
  QubitLayout layout;
  for (int i = 0; i < model.system_count(); ++i) layout.system_qubits.push_back(i);
  for (int j = 0; j < model.bath_count(); ++j) layout.bath_qubits.push_back(model.system_count() + j);
  for (const auto& c : model.system_couplings) layout.connectivity.emplace_back(c.a, c.b);
  for (const auto& c : model.sb_couplings)
    layout.connectivity.emplace_back(c.a, model.system_count() + c.b);
  return layout;
}

namespace detail {

inline Matrix single_site(int n, int q, const Matrix& op) {
  const int qs[] = {q};
  return embed(op, qs, n);
}

inline Matrix two_site(int n, int p, int q, const Matrix& op_p, const Matrix& op_q) {
  const int qs[] = {p, q};
  return embed(kron(op_p, op_q), qs, n);
}

}  // namespace detail

// H_S on the system spins alone (system spin i on qubit i).
inline Matrix system_hamiltonian(const SpinModel& model) {
  model.validate();
  const int n = model.system_count();
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  Matrix h = Matrix::Zero(d, d);
  for (int i = 0; i < n; ++i)
    h -= 0.5 * model.system_splittings[static_cast<std::size_t>(i)] *
         detail::single_site(n, i, pauli::z());
  for (const auto& c : model.system_couplings)
    h += c.value * detail::two_site(n, c.a, c.b, pauli::z(), pauli::z());
  return h;
}

// Full Hamiltonian with qubits placed according to `layout`.
inline Matrix total_hamiltonian(const SpinModel& model, const QubitLayout& layout) {
  model.validate();
  layout.validate(model);
  const int n = layout.n_qubits();
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  Matrix h = Matrix::Zero(d, d);
  const auto& sq = layout.system_qubits;
  const auto& bq = layout.bath_qubits;
  for (int i = 0; i < model.system_count(); ++i)
    h -= 0.5 * model.system_splittings[static_cast<std::size_t>(i)] *
         detail::single_site(n, sq[static_cast<std::size_t>(i)], pauli::z());
  for (int j = 0; j < model.bath_count(); ++j)
    h -= 0.5 * model.bath_splittings[static_cast<std::size_t>(j)] *
         detail::single_site(n, bq[static_cast<std::size_t>(j)], pauli::z());
  for (const auto& c : model.system_couplings)
    h += c.value * detail::two_site(n, sq[static_cast<std::size_t>(c.a)],
                                    sq[static_cast<std::size_t>(c.b)], pauli::z(), pauli::z());
  for (const auto& c : model.sb_couplings)
    h += c.value * detail::two_site(n, sq[static_cast<std::size_t>(c.a)],
                                    bq[static_cast<std::size_t>(c.b)], pauli::x(), pauli::x());
  return h;
}

// Logical ordering: system spins first, then bath spins.
inline Matrix total_hamiltonian(const SpinModel& model) {
  return total_hamiltonian(model, logical_layout(model));
}

struct SpectrumEntry {
  double energy = 0.0;
  std::vector<int> spins;  // 0 = up, 1 = down, per system spin
  std::string label() const {
    std::string s;
    for (int b : spins) s += b ? "d" : "u";
    return s;
  }
};

// H_S is diagonal in the z product basis: enumerate all product states,
// sorted by energy (stable in basis order for ties).
inline std::vector<SpectrumEntry> system_spectrum(const SpinModel& model) {
  model.validate();
  const int n = model.system_count();
  std::vector<SpectrumEntry> out;
  for (std::size_t idx = 0; idx < dim_of(n); ++idx) {
    SpectrumEntry e;
    e.spins.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) e.spins[static_cast<std::size_t>(i)] = static_cast<int>((idx >> (n - 1 - i)) & 1U);
    auto s = [&](int i) { return e.spins[static_cast<std::size_t>(i)] ? -1.0 : 1.0; };
    for (int i = 0; i < n; ++i) e.energy -= 0.5 * model.system_splittings[static_cast<std::size_t>(i)] * s(i);
    for (const auto& c : model.system_couplings) e.energy += c.value * s(c.a) * s(c.b);
    out.push_back(std::move(e));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& x, const auto& y) { return x.energy < y.energy; });
  return out;
}

// All product states at the lowest energy (degeneracies are reported, not broken).
inline std::vector<SpectrumEntry> ground_states(const SpinModel& model, double tolerance = 1e-12) {
  auto spectrum = system_spectrum(model);
  std::vector<SpectrumEntry> out;
  for (auto& e : spectrum)
    if (e.energy <= spectrum.front().energy + tolerance) out.push_back(e);
  return out;
}

// ---------------------------------------------------------------------------
// Presets for the three demonstrations.

struct ModelPreset {
  std::string name;
  SpinModel model;
  QubitLayout layout;
  double tau = 1.0;
};

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"one_one", "two_two", "three_four"};
  return names;
}

// one_one:    eps_s = 1, v = 0.1, eps_b free (default 1).
// two_two:    g = 0.5, eps_b = 1, v = 0.2, eps_s = 0.
// three_four: g12 = g23 = 0.5, eps_b = 2|g| = 1, v = 0.2, eps_s = 0.
inline ModelPreset preset(const std::string& name) {
  ModelPreset p;
  p.name = name;
  if (name == "one_one") {
    p.model.system_splittings = {1.0};
    p.model.bath_splittings = {1.0};
    p.model.sb_couplings = {{0, 0, 0.1}};
    p.layout.system_qubits = {0};
    p.layout.bath_qubits = {1};
    p.layout.connectivity = {{0, 1}};
    p.layout.device_labels = {4, 5};
  } else if (name == "two_two") {
    p.model.system_splittings = {0.0, 0.0};
    p.model.bath_splittings = {1.0, 1.0};
    p.model.system_couplings = {{0, 1, 0.5}};
    p.model.sb_couplings = {{1, 1, 0.2}, {0, 0, 0.2}};
    p.layout.system_qubits = {3, 1};
    p.layout.bath_qubits = {2, 0};
    p.layout.connectivity = {{3, 1}, {1, 0}, {3, 2}};
    p.layout.device_labels = {4, 5, 1, 3};
  } else if (name == "three_four") {
    p.model.system_splittings = {0.0, 0.0, 0.0};
    p.model.bath_splittings = {1.0, 1.0, 1.0, 1.0};
    p.model.system_couplings = {{2, 1, 0.5}, {1, 0, 0.5}};
    p.model.sb_couplings = {{0, 0, 0.2}, {2, 3, 0.2}, {0, 1, 0.2}, {2, 2, 0.2}};
    p.layout.system_qubits = {1, 3, 5};
    p.layout.bath_qubits = {0, 2, 4, 6};
    p.layout.connectivity = {{1, 0}, {1, 2}, {5, 4}, {5, 6}, {3, 1}, {5, 3}};
    p.layout.device_labels = {0, 1, 2, 3, 4, 5, 6};
  } else {
    std::string list;
    for (const auto& n : preset_names()) list += (list.empty() ? "" : ", ") + n;
    throw ConfigError("unknown preset '" + name + "' (available: " + list + ")");
  }
  p.model.validate();
  p.layout.validate(p.model);
  return p;
}

// ---------------------------------------------------------------------------
// JSON

inline void to_json(nlohmann::json& j, const SpinModel& m) {
  j = nlohmann::json{{"system_splittings", m.system_splittings},
                     {"bath_splittings", m.bath_splittings},
                     {"system_couplings", nlohmann::json::array()},
                     {"sb_couplings", nlohmann::json::array()}};
  for (const auto& c : m.system_couplings)
    j["system_couplings"].push_back({{"control", c.a}, {"target", c.b}, {"g", c.value}});
  for (const auto& c : m.sb_couplings)
    j["sb_couplings"].push_back({{"system", c.a}, {"bath", c.b}, {"v", c.value}});
}

inline void from_json(const nlohmann::json& j, SpinModel& m) {
  m = SpinModel{};
  j.at("system_splittings").get_to(m.system_splittings);
  j.at("bath_splittings").get_to(m.bath_splittings);
  if (j.contains("system_couplings"))
    for (const auto& c : j.at("system_couplings"))
      m.system_couplings.push_back({c.at("control").get<int>(), c.at("target").get<int>(),
                                    c.at("g").get<double>()});
  if (j.contains("sb_couplings"))
    for (const auto& c : j.at("sb_couplings"))
      m.sb_couplings.push_back(
          {c.at("system").get<int>(), c.at("bath").get<int>(), c.at("v").get<double>()});
  m.validate();
}

inline void to_json(nlohmann::json& j, const QubitLayout& l) {
  j = nlohmann::json{{"system_qubits", l.system_qubits},
                     {"bath_qubits", l.bath_qubits},
                     {"connectivity", nlohmann::json::array()}};
  for (const auto& [p, q] : l.connectivity) j["connectivity"].push_back({p, q});
  if (!l.device_labels.empty()) j["device_labels"] = l.device_labels;
}

inline void from_json(const nlohmann::json& j, QubitLayout& l) {
  l = QubitLayout{};
  j.at("system_qubits").get_to(l.system_qubits);
  j.at("bath_qubits").get_to(l.bath_qubits);
  for (const auto& e : j.at("connectivity"))
    l.connectivity.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  if (j.contains("device_labels")) j.at("device_labels").get_to(l.device_labels);
}

}  // namespace noisecool

#endif  // NOISECOOL_MODEL_HPP
