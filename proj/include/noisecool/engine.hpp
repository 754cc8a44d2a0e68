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

// Noisy-circuit executor: exact density-matrix evolution of a Trotter
// program, observable time series, shot sampling and parameter sweeps.

#ifndef NOISECOOL_ENGINE_HPP
#define NOISECOOL_ENGINE_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "noisecool/circuit.hpp"
#include "noisecool/common.hpp"
#include "noisecool/density_matrix.hpp"
#include "noisecool/model.hpp"
#include "noisecool/noise.hpp"
#include "noisecool/pauli.hpp"

namespace noisecool {

struct Observable {
  std::string name;
  PauliString pauli;  // on circuit qubits
};

// "Zs0*Zs1" (system spins), "Xb2" (bath spins), "Zq3" (circuit qubit) or a raw
// Pauli string such as "ZIZ".
inline Observable parse_observable(const std::string& text, const QubitLayout& layout) {
  const int n = layout.n_qubits();
  const bool raw = static_cast<int>(text.size()) == n &&
                   std::all_of(text.begin(), text.end(), [](char c) { return std::string("IXYZ").find(c) != std::string::npos; });
  if (raw) return {text, PauliString::parse(text)};
  PauliString p = PauliString::single(n, 0, PauliLabel::I);
  std::stringstream ss(text);
  std::string tok;
  bool any = false;
  while (std::getline(ss, tok, '*')) {
    if (tok.size() < 3) throw ConfigError("observable '" + text + "': cannot parse token '" + tok + "'");
    const char axis = tok[0];
    if (axis != 'X' && axis != 'Y' && axis != 'Z')
      throw ConfigError("observable '" + text + "': axis must be X, Y or Z in '" + tok + "'");
    const char kind = tok[1];
    int idx = 0;
    try {
      std::size_t used = 0;
      idx = std::stoi(tok.substr(2), &used);
      if (used != tok.size() - 2) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ConfigError("observable '" + text + "': bad index in '" + tok + "'");
    }
    const std::vector<int>* list = nullptr;
    if (kind == 's') list = &layout.system_qubits;
    else if (kind == 'b') list = &layout.bath_qubits;
    int q = idx;
    if (list) {
      if (idx < 0 || idx >= static_cast<int>(list->size()))
        throw ConfigError("observable '" + text + "': spin index out of range in '" + tok + "'");
      q = (*list)[static_cast<std::size_t>(idx)];
    } else if (kind != 'q') {
      throw ConfigError("observable '" + text + "': expected s, b or q in '" + tok + "'");
    }
    if (q < 0 || q >= n) throw ConfigError("observable '" + text + "': qubit out of range");
    if (p[q] != PauliLabel::I) throw ConfigError("observable '" + text + "': qubit used twice");
    p[q] = pauli::from_char(axis);
    any = true;
  }
  if (!any) throw ConfigError("observable '" + text + "' is empty");
  return {text, p};
}

// ---------------------------------------------------------------------------
// Sampling

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ (b * 0x632be59bd9b4e019ULL));
}

struct SampleResult {
  double mean = 0.0;
  double stderr_ = 0.0;
};

// N single-shot +-1 outcomes of a Hermitian Pauli string.
inline SampleResult sample_from_expectation(double expectation, int shots, std::uint64_t seed) {
  if (shots < 1) throw ValidationError("sample_measurements: shots must be >= 1");
  const double p_plus = std::clamp(0.5 * (1.0 + expectation), 0.0, 1.0);
  std::mt19937_64 rng(seed);
  long long sum = 0;
  for (int i = 0; i < shots; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    sum += u < p_plus ? 1 : -1;
  }
  SampleResult r;
  r.mean = static_cast<double>(sum) / shots;
  r.stderr_ = std::sqrt(std::max(0.0, 1.0 - r.mean * r.mean) / shots);
  return r;
}

inline SampleResult sample_measurements(const DensityMatrix& rho, const PauliString& p, int shots,
                                        std::uint64_t seed) {
  if (!p.is_hermitian()) throw ValidationError("sample_measurements: observable must be a Hermitian Pauli string");
  return sample_from_expectation(expectation(rho, p), shots, seed);
}

// ---------------------------------------------------------------------------
// Configuration and results

struct ExperimentConfig {
  std::string name = "run";
  TrotterPlan plan;
  NoiseModel noise;
  std::vector<int> initial_bits;  // per circuit qubit, 0 = |up>; empty = all up
  std::vector<Observable> observables;
  int shots = 0;  // 0 = exact only
  int record_every = 1;
  std::uint64_t seed = 0;
  // Undo the flip frame on odd steps so recorded values refer to the
  // simulated model.
  bool frame_correct = true;
  int check_every = 10;  // full PSD check period in steps

  void validate() const {
    plan.validate();
    if (plan.steps < 1) throw ConfigError("steps must be >= 1");
    if (noise.n_qubits != plan.layout.n_qubits())
      throw ConfigError("noise model qubit count does not match the layout");
    if (!initial_bits.empty() && static_cast<int>(initial_bits.size()) != plan.layout.n_qubits())
      throw ConfigError("initial_bits must list one bit per qubit");
    for (int b : initial_bits)
      if (b != 0 && b != 1) throw ConfigError("initial_bits entries must be 0 or 1");
    for (const auto& o : observables) {
      if (o.pauli.n_qubits() != plan.layout.n_qubits())
        throw ConfigError("observable '" + o.name + "' does not act on the declared qubits");
      if (!o.pauli.is_hermitian()) throw ConfigError("observable '" + o.name + "' is not Hermitian");
    }
    if (shots < 0) throw ConfigError("shots must be >= 0");
    if (record_every < 1) throw ConfigError("record_every must be >= 1");
    if (check_every < 1) throw ConfigError("check_every must be >= 1");
  }
};

struct TimeSeriesRow {
  int step = 0;
  double t_sim = 0.0;
  std::vector<double> exact;
  std::vector<double> sampled;
  std::vector<double> stderr_;
  double purity_system = 1.0;
};

struct RunDiagnostics {
  double max_trace_error = 0.0;
  double max_hermiticity_error = 0.0;
  double min_eigenvalue = 1.0;
  double physical_duration_s = 0.0;  // per full program
};

struct TimeSeries {
  std::string name;
  std::vector<std::string> observables;
  bool sampled = false;
  std::vector<TimeSeriesRow> rows;
  RunDiagnostics diagnostics;

  // Mean of observable `k` over the last `n` recorded rows.
  double steady(std::size_t k, std::size_t n = 15) const {
    if (rows.empty()) throw ValidationError("empty time series");
    n = std::min(n, rows.size());
    double acc = 0.0;
    for (std::size_t i = rows.size() - n; i < rows.size(); ++i) acc += rows[i].exact.at(k);
    return acc / static_cast<double>(n);
  }

  double steady_purity(std::size_t n = 15) const {
    if (rows.empty()) throw ValidationError("empty time series");
    n = std::min(n, rows.size());
    double acc = 0.0;
    for (std::size_t i = rows.size() - n; i < rows.size(); ++i) acc += rows[i].purity_system;
    return acc / static_cast<double>(n);
  }

  std::size_t index_of(const std::string& obs) const {
    auto it = std::find(observables.begin(), observables.end(), obs);
    if (it == observables.end()) throw ValidationError("time series has no observable '" + obs + "'");
    return static_cast<std::size_t>(it - observables.begin());
  }
};

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string to_csv(const TimeSeries& ts) {
  std::string out = "step,t_sim";
  for (const auto& o : ts.observables) out += "," + o;
  if (ts.sampled)
    for (const auto& o : ts.observables) out += "," + o + "_sampled," + o + "_stderr";
  out += ",purity_system\n";
  for (const auto& r : ts.rows) {
    out += std::to_string(r.step) + "," + format_double(r.t_sim);
    for (double v : r.exact) out += "," + format_double(v);
    if (ts.sampled)
      for (std::size_t k = 0; k < r.sampled.size(); ++k)
        out += "," + format_double(r.sampled[k]) + "," + format_double(r.stderr_[k]);
    out += "," + format_double(r.purity_system) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Execution

namespace detail {

// +1/-1: how a Pauli string transforms when the system qubits carry the flip.
inline double frame_sign(const PauliString& p, const QubitLayout& layout, FlipAxis axis) {
  const PauliLabel f = axis == FlipAxis::X ? PauliLabel::X : axis == FlipAxis::Y ? PauliLabel::Y : PauliLabel::Z;
  double s = 1.0;
  for (int q : layout.system_qubits) {
    const PauliLabel l = p[q];
    if (l != PauliLabel::I && l != f) s = -s;
  }
  return s;
}

}  // namespace detail

// Noisy step circuits (even, odd) ready for execution.
struct CompiledProgram {
  NoisyCircuit even;
  NoisyCircuit odd;
};

inline CompiledProgram compile_program(const ExperimentConfig& cfg) {
  CompiledProgram p;
  p.even = attach_noise(trotter_step(cfg.plan, Parity::Even), cfg.noise);
  p.odd = cfg.plan.symmetrize ? attach_noise(trotter_step(cfg.plan, Parity::Odd), cfg.noise) : p.even;
  return p;
}

inline TimeSeries run(const ExperimentConfig& cfg) {
  cfg.validate();
  const int n = cfg.plan.layout.n_qubits();
  const CompiledProgram prog = compile_program(cfg);

  std::vector<int> bits = cfg.initial_bits.empty() ? std::vector<int>(static_cast<std::size_t>(n), 0) : cfg.initial_bits;
  Matrix rho = DensityMatrix::basis_state(bits).matrix();

  TimeSeries ts;
  ts.name = cfg.name;
  ts.sampled = cfg.shots > 0;
  for (const auto& o : cfg.observables) ts.observables.push_back(o.name);
  ts.diagnostics.physical_duration_s =
      (prog.even.duration() * ((cfg.plan.steps + 1) / 2) + prog.odd.duration() * (cfg.plan.steps / 2));

  std::vector<int> system(cfg.plan.layout.system_qubits);
  std::sort(system.begin(), system.end());

  auto record = [&](int step) {
    const auto state = DensityMatrix::unchecked(rho);
    TimeSeriesRow row;
    row.step = step;
    row.t_sim = step * cfg.plan.tau;
    const bool flipped = cfg.frame_correct && cfg.plan.symmetrize && (step % 2 == 1);
    for (std::size_t k = 0; k < cfg.observables.size(); ++k) {
      const auto& o = cfg.observables[k];
      double v = expectation(state, o.pauli);
      if (flipped) v *= detail::frame_sign(o.pauli, cfg.plan.layout, cfg.plan.flip_axis);
      row.exact.push_back(v);
      if (ts.sampled) {
        const auto s = sample_from_expectation(v, cfg.shots, derive_seed(cfg.seed, static_cast<std::uint64_t>(step), k));
        row.sampled.push_back(s.mean);
        row.stderr_.push_back(s.stderr_);
      }
    }
    row.purity_system = purity(partial_trace(state, system));
    ts.rows.push_back(std::move(row));
  };

  auto check = [&](int step, bool full) {
    const double tr_err = std::abs(rho.trace() - cplx{1.0});
    ts.diagnostics.max_trace_error = std::max(ts.diagnostics.max_trace_error, tr_err);
    if (tr_err > 1e-6)
      throw NumericalError("trace drift " + std::to_string(tr_err) + " at step " + std::to_string(step) +
                           " exceeds 1e-6");
    if (full) {
      const auto d = DensityMatrix::unchecked(rho).diagnostics();
      ts.diagnostics.max_hermiticity_error = std::max(ts.diagnostics.max_hermiticity_error, d.hermiticity_error);
      ts.diagnostics.min_eigenvalue = std::min(ts.diagnostics.min_eigenvalue, d.min_eigenvalue);
    }
  };

  check(0, true);
  record(0);
  for (int m = 1; m <= cfg.plan.steps; ++m) {
    apply_noisy_circuit(rho, (m % 2 == 1) ? prog.even : prog.odd);
    check(m, m % cfg.check_every == 0 || m == cfg.plan.steps);
    if (m % cfg.record_every == 0 || m == cfg.plan.steps) record(m);
  }
  return ts;
}

struct SweepResult {
  std::optional<TimeSeries> series;
  std::string error;
};

// Independent runs on up to `threads` workers; failures are isolated.
inline std::vector<SweepResult> sweep(const std::vector<ExperimentConfig>& configs, unsigned threads = 0) {
  std::vector<SweepResult> out(configs.size());
  if (configs.empty()) return out;
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(configs.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        out[i].series = run(configs[i]);
      } catch (const std::exception& e) {
        out[i].error = e.what();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Characterization probes

struct ProbeRow {
  int step = 0;
  double time_s = 0.0;         // physical time since the end of preparation
  std::vector<double> values;  // one expectation per probed qubit
};

struct ProbeResult {
  std::string kind;
  std::vector<std::string> columns;
  std::vector<ProbeRow> rows;
};

// Runs a probe on qubits with the given device labels (one label, or
// control/target for cnot_cycle). Values are <Z> or <X> per qubit as named
// by the probe's measurement metadata.
inline ProbeResult characterize(ProbeKind kind, const ProbeParams& params, const CalibrationData& cal,
                                const std::vector<int>& device_labels, const NoisePolicy& policy = {}) {
  const int n = kind == ProbeKind::CnotCycle ? 2 : 1;
  if (static_cast<int>(device_labels.size()) != n)
    throw ConfigError(std::string("characterize: expected ") + std::to_string(n) + " qubit label(s)");
  QubitLayout layout;
  layout.system_qubits = n == 2 ? std::vector<int>{0, 1} : std::vector<int>{0};
  layout.device_labels = device_labels;
  if (n == 2) layout.connectivity = {{0, 1}};
  ProbeParams p = params;
  if (n == 2) p.cnot_duration = cal.edge(device_labels[0], device_labels[1]).duration_ns * 1e-9;
  const NoiseModel nm = calibration_to_noise_model(cal, layout, policy);
  const auto circuits = characterization_circuit(kind, p);
  const std::string measure = circuits.front().metadata.at("measure");
  const PauliLabel axis = measure == "X" ? PauliLabel::X : PauliLabel::Z;

  ProbeResult res;
  res.kind = kind == ProbeKind::IdleDecay     ? "idle_decay"
             : kind == ProbeKind::IdleDephase ? "idle_dephase"
             : kind == ProbeKind::SqrtXCycle  ? "sqrtx_cycle"
             : kind == ProbeKind::XCycle      ? "x_cycle"
                                              : "cnot_cycle";
  for (int q = 0; q < n; ++q)
    res.columns.push_back(std::string(1, pauli::to_char(axis)) + "_q" + std::to_string(device_labels[q]));

  Matrix rho = DensityMatrix::basis_state(std::vector<int>(static_cast<std::size_t>(n), 0)).matrix();
  apply_noisy_circuit(rho, attach_noise(circuits.front(), nm));
  const NoisyCircuit step = circuits.size() > 1 ? attach_noise(circuits[1], nm) : NoisyCircuit{n, {}};
  double t = 0.0;
  for (std::size_t k = 0; k < circuits.size(); ++k) {
    if (k > 0) {
      apply_noisy_circuit(rho, step);
      t += step.duration();
    }
    ProbeRow row;
    row.step = static_cast<int>(k);
    row.time_s = t;
    const auto state = DensityMatrix::unchecked(rho);
    for (int q = 0; q < n; ++q) row.values.push_back(expectation(state, PauliString::single(n, q, axis)));
    res.rows.push_back(std::move(row));
  }
  return res;
}

inline std::string to_csv(const ProbeResult& r) {
  std::ostringstream os;
  os << "step,time_us";
  for (const auto& c : r.columns) os << ',' << c;
  os << '\n';
  for (const auto& row : r.rows) {
    os << row.step << ',' << format_double(row.time_s * 1e6);
    for (double v : row.values) os << ',' << format_double(v);
    os << '\n';
  }
  return os.str();
}

}  // namespace noisecool

#endif  // NOISECOOL_ENGINE_HPP
