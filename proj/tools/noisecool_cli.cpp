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

// noisecool command-line front end.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.
// NOISECOOL_THREADS caps the worker count of `sweep`.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "noisecool/noisecool.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace noisecool;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

// Files are staged in memory and written only after every computation has
// succeeded, each via a temporary file and rename.
struct OutputSet {
  std::vector<std::pair<fs::path, std::string>> files;

  void add(fs::path p, std::string content) { files.emplace_back(std::move(p), std::move(content)); }

  std::vector<std::string> commit() const {
    std::vector<std::string> written;
    for (const auto& [p, content] : files) {
      if (p.has_parent_path()) fs::create_directories(p.parent_path());
      const fs::path tmp = p.string() + ".tmp";
      {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
        out << content;
      }
      fs::rename(tmp, p);
      written.push_back(p.string());
    }
    return written;
  }
};

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json manifest_base(const std::string& command, bool stamp) {
  json m{{"software", "noisecool"}, {"version", kVersion}, {"command", command}};
  if (stamp) m["timestamp"] = iso_timestamp();
  return m;
}

unsigned thread_cap(int flag) {
  if (flag > 0) return static_cast<unsigned>(flag);
  if (const char* env = std::getenv("NOISECOOL_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v < 1) throw ConfigError("");
      return static_cast<unsigned>(v);
    } catch (...) {
      throw ConfigError(std::string("NOISECOOL_THREADS must be a positive integer, got '") + env + "'");
    }
  }
  return 0;
}

std::string emit(const json& j) { return j.dump(2) + "\n"; }

std::string sanitize(std::string s) {
  for (char& c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) c = '_';
  return s;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string config;
  std::string preset;
  std::string demo;
  std::optional<double> eps_b;
  std::optional<double> g;
  std::string panel = "a";
  std::optional<double> idle_us;
  std::optional<int> steps;
  std::string noise = "on";
  int shots = 0;
  std::uint64_t seed = 0;
  bool unfitted = false;
  std::string out_dir = ".";
  std::string name;
  bool stamp = false;
};

const char* default_calibration(const std::string& preset) {
  if (preset == "one_one") return "nairobi_demo1";
  if (preset == "two_two") return "lagos_demo2";
  return "nairobi_demo3";
}

json config_from_flags(const SimulateArgs& a) {
  json j;
  if (!a.demo.empty()) {
    json d{{"kind", a.demo}, {"fitted", !a.unfitted}};
    if (a.demo == "demo1") d["eps_b"] = a.eps_b.value_or(1.0);
    if (a.demo == "demo2") d["g"] = a.g.value_or(0.5);
    if (a.demo == "demo3") d["panel"] = a.panel;
    if (a.idle_us && a.demo != "demo3") d["idle_us"] = *a.idle_us;
    j["demo"] = d;
  } else {
    const std::string p = a.preset.empty() ? "one_one" : a.preset;
    const ModelPreset mp = preset(p);
    j["preset"] = p;
    j["calibration"] = default_calibration(p);
    json ov = json::object();
    if (a.eps_b) ov["bath_splittings"] = std::vector<double>(mp.model.bath_splittings.size(), *a.eps_b);
    if (a.g) ov["system_couplings"] = std::vector<double>(mp.model.system_couplings.size(), *a.g);
    if (!ov.empty()) j["overrides"] = ov;
    if (a.idle_us) j["idle_us"] = *a.idle_us;
    std::vector<std::string> obs;
    for (int i = 0; i < mp.model.system_count(); ++i) obs.push_back("Zs" + std::to_string(i));
    for (const auto& c : mp.model.system_couplings)
      obs.push_back("Zs" + std::to_string(c.a) + "*Zs" + std::to_string(c.b));
    j["observables"] = obs;
  }
  if (a.steps) j["steps"] = *a.steps;
  return j;
}

int cmd_simulate(const SimulateArgs& a) {
  json cfg_json;
  fs::path base = ".";
  if (!a.config.empty()) {
    cfg_json = config::read_file(a.config);
    base = fs::path(a.config).parent_path();
    if (a.steps) cfg_json["steps"] = *a.steps;
  } else {
    cfg_json = config_from_flags(a);
  }
  if (a.noise != "on" && a.noise != "off") throw ConfigError("--noise must be 'on' or 'off'");
  if (a.noise == "off") cfg_json["noise"]["enabled"] = false;
  if (a.shots > 0) cfg_json["shots"] = a.shots;
  if (a.seed != 0) cfg_json["seed"] = a.seed;
  if (!a.name.empty()) cfg_json["name"] = a.name;

  const ExperimentConfig cfg = parse_experiment(cfg_json, base.empty() ? "." : base);
  const TimeSeries ts = run(cfg);

  const std::string stem = sanitize(cfg.name);
  OutputSet out;
  const fs::path csv = fs::path(a.out_dir) / (stem + ".csv");
  const fs::path man = fs::path(a.out_dir) / (stem + ".manifest.json");
  out.add(csv, to_csv(ts));
  json m = manifest_base("simulate", a.stamp);
  m["config"] = cfg_json;
  m["resolved"] = resolved_json(cfg);
  m["seed"] = cfg.seed;
  m["diagnostics"] = {{"max_trace_error", ts.diagnostics.max_trace_error},
                      {"max_hermiticity_error", ts.diagnostics.max_hermiticity_error},
                      {"min_eigenvalue", ts.diagnostics.min_eigenvalue},
                      {"physical_duration_us", ts.diagnostics.physical_duration_s * 1e6}};
  m["outputs"] = {csv.string(), man.string()};
  out.add(man, emit(m));
  for (const auto& f : out.commit()) std::cout << f << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// sweep: {"runs": [config, ...]} or a bare array of configs.

int cmd_sweep(const std::string& path, const std::string& out_dir, int threads_flag, bool stamp) {
  const json root = config::read_file(path);
  const json runs = root.is_array() ? root : (root.is_object() && root.contains("runs") ? root.at("runs") : json());
  if (!runs.is_array()) throw ConfigError("$: expected an array of configs or an object with 'runs'");
  const fs::path base = fs::path(path).parent_path();
  std::vector<ExperimentConfig> configs;
  std::map<std::string, int> names;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    try {
      configs.push_back(parse_experiment(runs[i], base.empty() ? "." : base));
    } catch (const ConfigError& e) {
      throw ConfigError("runs[" + std::to_string(i) + "]" + std::string(e.what()).substr(1));
    }
    if (names[configs.back().name]++ > 0)
      throw ConfigError("runs[" + std::to_string(i) + "].name: duplicate run name '" + configs.back().name + "'");
  }
  const auto results = sweep(configs, thread_cap(threads_flag));

  OutputSet out;
  json m = manifest_base("sweep", stamp);
  m["config"] = root;
  m["runs"] = json::array();
  bool failed = false;
  for (std::size_t i = 0; i < results.size(); ++i) {
    json r{{"name", configs[i].name}, {"resolved", resolved_json(configs[i])}};
    if (results[i].series) {
      const fs::path csv = fs::path(out_dir) / (sanitize(configs[i].name) + ".csv");
      out.add(csv, to_csv(*results[i].series));
      r["output"] = csv.string();
    } else {
      r["error"] = results[i].error;
      failed = true;
    }
    m["runs"].push_back(r);
  }
  out.add(fs::path(out_dir) / "sweep.manifest.json", emit(m));
  for (const auto& f : out.commit()) std::cout << f << "\n";
  for (std::size_t i = 0; i < results.size(); ++i)
    if (!results[i].series) std::cerr << "run '" << configs[i].name << "' failed: " << results[i].error << "\n";
  return failed ? kExitNumerical : 0;
}

// ---------------------------------------------------------------------------
// effective-lindbladian

int cmd_effective(const std::string& path, const std::string& mode, bool residual, const std::string& out_path) {
  const json cfg_json = config::read_file(path);
  const fs::path base = fs::path(path).parent_path();
  const ExperimentConfig cfg = parse_experiment(cfg_json, base.empty() ? "." : base);
  FrameMode fm;
  if (mode == "full") fm = FrameMode::Full;
  else if (mode == "block_exempt") fm = FrameMode::BlockExempt;
  else throw ConfigError("--mode must be 'full' or 'block_exempt'");

  const CompiledProgram prog = compile_program(cfg);
  // A symmetrized program repeats with period two steps.
  NoisyCircuit nc = prog.even;
  double tau = cfg.plan.tau;
  if (cfg.plan.symmetrize) {
    nc.gates.insert(nc.gates.end(), prog.odd.gates.begin(), prog.odd.gates.end());
    tau *= 2.0;
  }
  EffectiveLindbladian eff;
  try {
    eff = extract_effective_lindbladian(nc, tau, fm);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string(e.what()) + " (the step unitary is too far from identity; try a smaller tau)");
  }
  json rep = report_json(eff, nc);
  rep["period_steps"] = cfg.plan.symmetrize ? 2 : 1;
  rep["disorder"] = to_json_value(disorder_report(nc, tau, cfg.plan.model, cfg.plan.layout));
  if (residual) {
    try {
      const auto r = generator_residual(nc, eff);
      rep["residual"] = {{"generator_norm", r.generator_norm},
                         {"step_norm", r.step_norm},
                         {"method", r.dense ? "dense" : "krylov"},
                         {"krylov_dim", r.krylov_dim}};
    } catch (const NumericalError& e) {
      throw NumericalError(std::string(e.what()) + " (matrix logarithm failed; try a smaller tau)");
    }
  }
  if (out_path.empty()) {
    std::cout << emit(rep);
  } else {
    OutputSet out;
    out.add(out_path, emit(rep));
    out.commit();
  }
  return 0;
}

// ---------------------------------------------------------------------------
// spectrum

int cmd_spectrum(const SingleSpinSpectrum& s, double w_min, double w_max, int points, const std::string& out_path) {
  if (points < 2) throw ConfigError("--points must be >= 2");
  if (!(w_max > w_min)) throw ConfigError("--omega-max must exceed --omega-min");
  const SpectralFunction sf = s.spectral();
  std::ostringstream os;
  os << "omega,S,background,peak\n";
  for (int i = 0; i < points; ++i) {
    const double w = w_min + (w_max - w_min) * i / (points - 1);
    const double total = sf(w);
    os << format_double(w) << ',' << format_double(total) << ',' << format_double(sf.background) << ','
       << format_double(total - sf.background) << '\n';
  }
  if (out_path.empty()) {
    std::cout << os.str();
  } else {
    OutputSet out;
    out.add(out_path, os.str());
    out.commit();
  }
  return 0;
}

// ---------------------------------------------------------------------------
// characterize

struct CharacterizeArgs {
  std::string kind;
  std::string calibration = "nairobi_demo1";
  std::vector<int> qubits;
  int steps = 40;
  double idle_us = 1.0;
  double drift = 0.0;        // RotateZ angle per 35 ns of idling
  double overrotation = 0.0;  // X rotation after each probed gate
  std::string out;
};

int cmd_characterize(const CharacterizeArgs& a) {
  const ProbeKind kind = probe_kind_from_string(a.kind);
  const CalibrationData cal = config::calibration(json(a.calibration), "--calibration", ".");
  std::vector<int> labels = a.qubits;
  if (labels.empty()) {
    if (kind == ProbeKind::CnotCycle) {
      if (cal.edges.empty()) throw ConfigError("--calibration: no CNOT edges");
      labels = {cal.edges.begin()->first.first, cal.edges.begin()->first.second};
    } else {
      labels = {cal.qubits.begin()->first};
    }
  }
  ProbeParams p;
  p.steps = a.steps;
  p.idle = a.idle_us * 1e-6;
  NoisePolicy policy;
  if (a.drift != 0.0) policy.idle_drift[0] = a.drift;
  if (a.overrotation != 0.0) {
    CoherentErrorSpec c;
    c.kind = kind == ProbeKind::SqrtXCycle ? GateKind::SqrtX
             : kind == ProbeKind::XCycle   ? GateKind::PauliX
             : kind == ProbeKind::CnotCycle ? GateKind::CNOT
                                            : throw ConfigError("--overrotation applies to gate probes only");
    c.qubit = 0;
    c.axis = PauliLabel::X;
    c.angle = a.overrotation;
    c.validate();
    policy.coherent.push_back(c);
  }
  const ProbeResult r = characterize(kind, p, cal, labels, policy);
  if (a.out.empty()) {
    std::cout << to_csv(r);
  } else {
    OutputSet out;
    out.add(a.out, to_csv(r));
    out.commit();
  }
  return 0;
}

// ---------------------------------------------------------------------------
// steady-state

int cmd_steady(const SingleSpinSpectrum& s, const std::string& out_path) {
  const SpinModel m = s.model();
  const SpectralFunction sf = s.spectral();
  const double estimate = population_ratio_estimate(sf, s.eps_s);
  const RealVector p = steady_state(golden_rule_rates(m, {sf}));
  const ReferenceLindblad ref = reference_lindblad(m, {s.gamma_minus}, {s.background});
  const DensityMatrix rho = steady_state(lindblad_superoperator(ref.hamiltonian, ref.jumps));
  const DensityMatrix sys = partial_trace(rho, {0});
  const double p0 = sys.matrix()(0, 0).real(), p1 = sys.matrix()(1, 1).real();
  const double exact = p1 / p0;
  json j{{"parameters",
          {{"eps_s", s.eps_s}, {"eps_b", s.eps_b}, {"gamma_minus", s.gamma_minus}, {"v", s.v}, {"background", s.background}}},
         {"estimate_ratio", estimate},
         {"golden_rule", {{"p0", p(0)}, {"p1", p(1)}, {"ratio", p(1) / p(0)}}},
         {"lindblad", {{"p0", p0}, {"p1", p1}, {"ratio", exact}, {"sigma_z", p0 - p1}}},
         {"relative_discrepancy", std::abs(estimate - exact) / exact}};
  if (out_path.empty()) {
    std::cout << emit(j);
  } else {
    OutputSet out;
    out.add(out_path, emit(j));
    out.commit();
  }
  return 0;
}

// ---------------------------------------------------------------------------
// export-circuit

int cmd_export(const std::string& path, bool full, const std::string& out_path) {
  const json cfg_json = config::read_file(path);
  const fs::path base = fs::path(path).parent_path();
  const ExperimentConfig cfg = parse_experiment(cfg_json, base.empty() ? "." : base);
  json j;
  j["n_qubits"] = cfg.plan.layout.n_qubits();
  j["device_labels"] = cfg.plan.layout.device_labels;
  if (full) {
    j["steps"] = full_sequence(cfg.plan);
  } else {
    j["even"] = trotter_step(cfg.plan, Parity::Even);
    if (cfg.plan.symmetrize) j["odd"] = trotter_step(cfg.plan, Parity::Odd);
  }
  if (out_path.empty()) {
    std::cout << emit(j);
  } else {
    OutputSet out;
    out.add(out_path, emit(j));
    out.commit();
  }
  return 0;
}

SingleSpinSpectrum spectrum_args(const std::string& config, const std::map<std::string, std::optional<double>>& flags) {
  json j = config.empty() ? json::object() : config::read_file(config);
  for (const auto& [k, v] : flags)
    if (v) j[k] = *v;
  return parse_single_spin(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"noisecool: noise-utilizing digital quantum simulation of system-bath spin models"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Run one experiment and write CSV plus manifest");
  s->add_option("--config", sim.config, "Experiment config JSON");
  s->add_option("--preset", sim.preset, "Model preset (one_one, two_two, three_four)");
  s->add_option("--demo", sim.demo, "Demonstration (demo1, demo2, demo3)");
  s->add_option("--eps-b", sim.eps_b, "Bath splitting");
  s->add_option("--g", sim.g, "System coupling");
  s->add_option("--panel", sim.panel, "demo3 panel (a-d)");
  s->add_option("--idle-us", sim.idle_us, "Extra idle per phase in microseconds");
  s->add_option("--steps", sim.steps, "Trotter steps");
  s->add_option("--noise", sim.noise, "on or off");
  s->add_option("--shots", sim.shots, "Measurements per recorded point (0 = exact only)");
  s->add_option("--seed", sim.seed, "Sampling seed");
  s->add_flag("--unfitted", sim.unfitted, "Skip the fitted demo overrides");
  s->add_option("--out-dir", sim.out_dir, "Output directory");
  s->add_option("--name", sim.name, "Run name (file stem)");
  s->add_flag("--stamp", sim.stamp, "Record a wall-clock timestamp in the manifest");

  std::string sweep_cfg, sweep_out = ".";
  int sweep_threads = 0;
  bool sweep_stamp = false;
  auto* sw = app.add_subcommand("sweep", "Run several experiments in parallel");
  sw->add_option("--config", sweep_cfg, "Sweep config JSON")->required();
  sw->add_option("--out-dir", sweep_out, "Output directory");
  sw->add_option("--threads", sweep_threads, "Worker threads (default NOISECOOL_THREADS or all cores)");
  sw->add_flag("--stamp", sweep_stamp, "Record a wall-clock timestamp in the manifest");

  std::string eff_cfg, eff_mode = "full", eff_out;
  bool eff_no_residual = false;
  auto* ef = app.add_subcommand("effective-lindbladian", "Report the effective Lindbladian of one step period");
  ef->add_option("--config", eff_cfg, "Experiment config JSON")->required();
  ef->add_option("--mode", eff_mode, "Frame mode: full or block_exempt");
  ef->add_flag("--no-residual", eff_no_residual, "Skip the brute-force residual");
  ef->add_option("--out", eff_out, "Output file (default stdout)");

  std::string sp_cfg, sp_out;
  std::map<std::string, std::optional<double>> sp_flags{
      {"eps_s", {}}, {"eps_b", {}}, {"gamma_minus", {}}, {"v", {}}, {"background", {}}};
  double w_min = -3.0, w_max = 3.0;
  int points = 601;
  auto* spc = app.add_subcommand("spectrum", "Tabulate the bath spectral function");
  spc->add_option("--config", sp_cfg, "Spectrum config JSON");
  spc->add_option("--eps-b", sp_flags["eps_b"], "Peak position");
  spc->add_option("--gamma-minus", sp_flags["gamma_minus"], "Bath damping rate");
  spc->add_option("--v", sp_flags["v"], "System-bath coupling");
  spc->add_option("--background", sp_flags["background"], "Background rate");
  spc->add_option("--omega-min", w_min, "Lower frequency");
  spc->add_option("--omega-max", w_max, "Upper frequency");
  spc->add_option("--points", points, "Number of samples");
  spc->add_option("--out", sp_out, "Output file (default stdout)");

  CharacterizeArgs ch;
  auto* chc = app.add_subcommand("characterize", "Simulate a noise characterization probe");
  chc->add_option("--kind", ch.kind, "idle_decay, idle_dephase, sqrtx_cycle, x_cycle, cnot_cycle")->required();
  chc->add_option("--calibration", ch.calibration, "Calibration preset name or JSON file");
  chc->add_option("--qubit", ch.qubits, "Device label(s); control then target for cnot_cycle");
  chc->add_option("--steps", ch.steps, "Probe repetitions");
  chc->add_option("--idle-us", ch.idle_us, "Idle per repetition (idle probes)");
  chc->add_option("--drift", ch.drift, "RotateZ angle per 35 ns of idling");
  chc->add_option("--overrotation", ch.overrotation, "X rotation after each probed gate");
  chc->add_option("--out", ch.out, "Output file (default stdout)");

  std::string ss_cfg, ss_out;
  std::map<std::string, std::optional<double>> ss_flags{
      {"eps_s", {}}, {"eps_b", {}}, {"gamma_minus", {}}, {"v", {}}, {"background", {}}};
  auto* ssc = app.add_subcommand("steady-state", "Compare exact and golden-rule steady states of one system spin");
  ssc->add_option("--config", ss_cfg, "Spectrum config JSON");
  ssc->add_option("--eps-s", ss_flags["eps_s"], "System splitting");
  ssc->add_option("--eps-b", ss_flags["eps_b"], "Bath splitting");
  ssc->add_option("--gamma-minus", ss_flags["gamma_minus"], "Bath damping rate");
  ssc->add_option("--v", ss_flags["v"], "System-bath coupling");
  ssc->add_option("--background", ss_flags["background"], "Background rate");
  ssc->add_option("--out", ss_out, "Output file (default stdout)");

  std::string ex_cfg, ex_out;
  bool ex_full = false;
  auto* exc = app.add_subcommand("export-circuit", "Write the compiled Trotter circuits as JSON");
  exc->add_option("--config", ex_cfg, "Experiment config JSON")->required();
  exc->add_flag("--full", ex_full, "Emit every step instead of the even/odd pair");
  exc->add_option("--out", ex_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*s) return cmd_simulate(sim);
    if (*sw) return cmd_sweep(sweep_cfg, sweep_out, sweep_threads, sweep_stamp);
    if (*ef) return cmd_effective(eff_cfg, eff_mode, !eff_no_residual, eff_out);
    if (*spc) return cmd_spectrum(spectrum_args(sp_cfg, sp_flags), w_min, w_max, points, sp_out);
    if (*chc) return cmd_characterize(ch);
    if (*ssc) return cmd_steady(spectrum_args(ss_cfg, ss_flags), ss_out);
    if (*exc) return cmd_export(ex_cfg, ex_full, ex_out);
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}
