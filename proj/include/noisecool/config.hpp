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

// JSON experiment configs. Field names carry their units (idle_us, t1_us,
// duration_ns); errors name the offending field as a JSON path.
//
//   {
//     "name": "run",
//     "demo": {"kind": "demo1", "eps_b": 1.0, "idle_us": 1.6, "fitted": true},
//     "preset": "one_one",
//     "model": {...}, "layout": {...},
//     "tau": 1.0, "steps": 60, "idle_us": 0.0, "idle_phases": 1,
//     "symmetrize": true, "flip_axis": "X", "bath_shift": 0.0,
//     "calibration": "nairobi_demo1" | {...} | "path/to/calibration.json",
//     "noise": {"enabled": true, "scale": 1.0, "cnot_scale": 1.0,
//               "spectator_idle": true, "thermal_on_active": false},
//     "overrides": {...},
//     "initial_bits": [0, 0], "observables": ["Zs0"],
//     "shots": 0, "record_every": 1, "seed": 0
//   }
//
// With "demo" present the demo supplies model, layout, calibration, plan and
// observables; only name, steps, noise, shots, record_every, seed and
// observables may accompany it.

#ifndef NOISECOOL_CONFIG_HPP
#define NOISECOOL_CONFIG_HPP

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "noisecool/calibration_presets.hpp"
#include "noisecool/demos.hpp"
#include "noisecool/dynamics.hpp"
#include "noisecool/engine.hpp"

namespace noisecool {

namespace config {

using nlohmann::json;

inline void require_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(path + ": expected an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw ConfigError(path + "." + k + ": unknown field");
}

// Typed read with the field path in every error.
template <class T>
T get(const json& j, const std::string& key, const std::string& path) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(path + "." + key + ": " + e.what());
  }
}

template <class T>
T get_or(const json& j, const std::string& key, const std::string& path, T fallback) {
  return j.contains(key) ? get<T>(j, key, path) : fallback;
}

// Runs a from_json conversion, prefixing library errors with the path.
template <class T>
T convert(const json& j, const std::string& path) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  } catch (const Error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

inline json read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw ConfigError("cannot open '" + p.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(p.string() + ": " + e.what());
  }
}

inline CalibrationData calibration(const json& j, const std::string& path, const std::filesystem::path& base_dir) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    for (const auto& n : calibration_preset_names())
      if (n == name) return calibration_preset(name);
    std::filesystem::path p(name);
    if (p.is_relative()) p = base_dir / p;
    if (!std::filesystem::exists(p))
      throw ConfigError(path + ": '" + name + "' is neither a calibration preset nor a readable file");
    return convert<CalibrationData>(read_file(p), path);
  }
  return convert<CalibrationData>(j, path);
}

inline FlipAxis flip_axis(const std::string& s, const std::string& path) {
  if (s == "X") return FlipAxis::X;
  if (s == "Y") return FlipAxis::Y;
  if (s == "Z") return FlipAxis::Z;
  throw ConfigError(path + ": flip axis must be X, Y or Z");
}

struct NoiseSection {
  bool enabled = true;
  NoisePolicy policy;
};

inline NoiseSection noise_section(const json& j, const std::string& path) {
  require_keys(j, path, {"enabled", "scale", "cnot_scale", "spectator_idle", "thermal_on_active"});
  NoiseSection s;
  s.enabled = get_or(j, "enabled", path, true);
  s.policy.scale = get_or(j, "scale", path, 1.0);
  s.policy.cnot_scale = get_or(j, "cnot_scale", path, 1.0);
  s.policy.spectator_idle = get_or(j, "spectator_idle", path, true);
  s.policy.thermal_on_active = get_or(j, "thermal_on_active", path, false);
  if (s.policy.scale < 0) throw ConfigError(path + ".scale: must be >= 0");
  if (s.policy.cnot_scale < 0) throw ConfigError(path + ".cnot_scale: must be >= 0");
  return s;
}

inline ExperimentConfig from_demo(const json& root, const json& d, const NoiseSection& noise) {
  const std::string path = "$.demo";
  require_keys(d, path, {"kind", "eps_b", "idle_us", "g", "panel", "fitted"});
  DemoSettings s;
  s.fitted = get_or(d, "fitted", path, true);
  s.steps = get_or(root, "steps", "$", 0);
  s.policy = noise.policy;
  const auto kind = get<std::string>(d, "kind", path);
  if (kind == "demo1") return demo1(get<double>(d, "eps_b", path), get_or(d, "idle_us", path, 1.6), s);
  if (kind == "demo2") return demo2(get<double>(d, "g", path), get_or(d, "idle_us", path, 0.7), s);
  if (kind == "demo3") {
    const auto panel = get<std::string>(d, "panel", path);
    if (panel.size() != 1) throw ConfigError(path + ".panel: expected one of a, b, c, d");
    return demo3(panel[0], s);
  }
  throw ConfigError(path + ".kind: unknown demo '" + kind + "' (demo1, demo2, demo3)");
}

}  // namespace config

// Builds a validated ExperimentConfig. Throws ConfigError naming the field.
inline ExperimentConfig parse_experiment(const nlohmann::json& root, const std::filesystem::path& base_dir = ".") {
  using namespace config;
  const bool is_demo = root.is_object() && root.contains("demo");
  if (is_demo)
    require_keys(root, "$", {"name", "demo", "steps", "noise", "shots", "record_every", "seed", "observables"});
  else
    require_keys(root, "$",
                 {"name", "preset", "model", "layout", "tau", "steps", "idle_us", "idle_phases", "symmetrize",
                  "flip_axis", "bath_shift", "calibration", "noise", "overrides", "initial_bits", "observables",
                  "shots", "record_every", "seed"});
  const NoiseSection noise = root.contains("noise") ? noise_section(root.at("noise"), "$.noise") : NoiseSection{};

  ExperimentConfig cfg;
  if (is_demo) {
    cfg = from_demo(root, root.at("demo"), noise);
  } else {
    const auto preset_name = get_or<std::string>(root, "preset", "$", "");
    ModelPreset p;
    if (!preset_name.empty()) {
      try {
        p = preset(preset_name);
      } catch (const Error& e) {
        throw ConfigError(std::string("$.preset: ") + e.what());
      }
    } else if (!root.contains("model") || !root.contains("layout")) {
      throw ConfigError("$: either preset or both model and layout are required");
    }
    if (root.contains("model")) p.model = convert<SpinModel>(root.at("model"), "$.model");
    if (root.contains("layout")) p.layout = convert<QubitLayout>(root.at("layout"), "$.layout");
    try {
      p.layout.validate(p.model);
    } catch (const Error& e) {
      throw ConfigError(std::string("$.layout: ") + e.what());
    }
    if (!root.contains("calibration")) throw ConfigError("$.calibration: required");
    const CalibrationData cal = calibration(root.at("calibration"), "$.calibration", base_dir);

    TrotterPlan& plan = cfg.plan;
    plan.model = p.model;
    plan.layout = p.layout;
    plan.tau = get_or(root, "tau", "$", p.tau);
    plan.steps = get_or(root, "steps", "$", 60);
    plan.extra_idle = get_or(root, "idle_us", "$", 0.0) * 1e-6;
    plan.idle_phases = get_or(root, "idle_phases", "$", 1);
    plan.symmetrize = get_or(root, "symmetrize", "$", true);
    plan.flip_axis = flip_axis(get_or<std::string>(root, "flip_axis", "$", "X"), "$.flip_axis");
    plan.bath_shift = get_or(root, "bath_shift", "$", 0.0);
    if (!(plan.tau > 0)) throw ConfigError("$.tau: must be > 0");
    if (plan.extra_idle < 0) throw ConfigError("$.idle_us: must be >= 0");
    if (plan.idle_phases < 0) throw ConfigError("$.idle_phases: must be >= 0");
    try {
      plan.timings = gate_timings(cal, plan.layout);
    } catch (const Error& e) {
      throw ConfigError(std::string("$.calibration: ") + e.what());
    }
    NoisePolicy policy = noise.policy;
    if (root.contains("overrides")) {
      const auto ov = convert<ParameterOverrides>(root.at("overrides"), "$.overrides");
      try {
        ov.apply(plan.model, &plan, &policy);
      } catch (const Error& e) {
        throw ConfigError(std::string("$.overrides: ") + e.what());
      }
    }
    try {
      cfg.noise = calibration_to_noise_model(cal, plan.layout, policy);
    } catch (const Error& e) {
      throw ConfigError(std::string("$.calibration: ") + e.what());
    }
    cfg.name = preset_name.empty() ? "custom" : preset_name;
    cfg.initial_bits = get_or(root, "initial_bits", "$", std::vector<int>{});
    if (!root.contains("observables")) throw ConfigError("$.observables: required");
  }
  if (!noise.enabled) cfg.noise = NoiseModel::noiseless(cfg.plan.layout.n_qubits());
  if (root.contains("observables")) {
    cfg.observables.clear();
    const auto obs = get<std::vector<std::string>>(root, "observables", "$");
    for (std::size_t i = 0; i < obs.size(); ++i) {
      try {
        cfg.observables.push_back(parse_observable(obs[i], cfg.plan.layout));
      } catch (const Error& e) {
        throw ConfigError("$.observables[" + std::to_string(i) + "]: " + e.what());
      }
    }
  }
  cfg.name = get_or(root, "name", "$", cfg.name);
  cfg.shots = get_or(root, "shots", "$", 0);
  cfg.record_every = get_or(root, "record_every", "$", 1);
  cfg.seed = get_or<std::uint64_t>(root, "seed", "$", 0);
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("$: ") + e.what());
  } catch (const Error& e) {
    throw ConfigError(std::string("$: ") + e.what());
  }
  return cfg;
}

// Resolved snapshot of a config, sufficient to rebuild the run.
inline nlohmann::json resolved_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["name"] = cfg.name;
  j["model"] = cfg.plan.model;
  j["layout"] = cfg.plan.layout;
  j["tau"] = cfg.plan.tau;
  j["steps"] = cfg.plan.steps;
  j["idle_us"] = cfg.plan.extra_idle * 1e6;
  j["idle_phases"] = cfg.plan.idle_phases;
  j["symmetrize"] = cfg.plan.symmetrize;
  j["flip_axis"] = to_string(cfg.plan.flip_axis);
  j["bath_shift"] = cfg.plan.bath_shift;
  j["single_qubit_gate_ns"] = cfg.plan.timings.single_qubit * 1e9;
  auto& cn = j["cnot_ns"] = nlohmann::json::array();
  for (const auto& [e, t] : cfg.plan.timings.cnot) cn.push_back({{"control", e.first}, {"target", e.second}, {"ns", t * 1e9}});
  j["noise"] = {{"scale", cfg.noise.scale},
                {"cnot_scale", cfg.noise.cnot_scale},
                {"spectator_idle", cfg.noise.spectator_idle},
                {"thermal_on_active", cfg.noise.thermal_on_active},
                {"coherent_errors", cfg.noise.coherent},
                {"warnings", cfg.noise.warnings}};
  std::vector<std::string> obs;
  for (const auto& o : cfg.observables) obs.push_back(o.name + "=" + o.pauli.to_string());
  j["observables"] = obs;
  j["initial_bits"] = cfg.initial_bits;
  j["shots"] = cfg.shots;
  j["record_every"] = cfg.record_every;
  j["seed"] = cfg.seed;
  return j;
}

// ---------------------------------------------------------------------------
// Spectral-function and steady-state configs

//   {"eps_s": 1.0, "eps_b": 1.0, "gamma_minus": 0.1, "v": 0.05, "background": 0.1}
struct SingleSpinSpectrum {
  double eps_s = 1.0;
  double eps_b = 1.0;
  double gamma_minus = 0.1;
  double v = 0.05;
  double background = 0.1;

  SpinModel model() const {
    SpinModel m;
    m.system_splittings = {eps_s};
    m.bath_splittings = {eps_b};
    m.sb_couplings = {{0, 0, v}};
    return m;
  }

  SpectralFunction spectral() const {
    return system_spectral_functions(model(), {gamma_minus}, {background}).front();
  }
};

inline SingleSpinSpectrum parse_single_spin(const nlohmann::json& j) {
  using namespace config;
  require_keys(j, "$", {"eps_s", "eps_b", "gamma_minus", "v", "background"});
  SingleSpinSpectrum s;
  s.eps_s = get_or(j, "eps_s", "$", s.eps_s);
  s.eps_b = get_or(j, "eps_b", "$", s.eps_b);
  s.gamma_minus = get_or(j, "gamma_minus", "$", s.gamma_minus);
  s.v = get_or(j, "v", "$", s.v);
  s.background = get_or(j, "background", "$", s.background);
  if (!(s.gamma_minus > 0)) throw ConfigError("$.gamma_minus: must be > 0");
  if (s.background < 0) throw ConfigError("$.background: must be >= 0");
  if (!(s.eps_s > 0)) throw ConfigError("$.eps_s: must be > 0");
  return s;
}

}  // namespace noisecool

#endif  // NOISECOOL_CONFIG_HPP
