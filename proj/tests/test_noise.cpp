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

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace noisecool {
namespace {

using testing::max_abs;

// Average gate fidelity from the process fidelity Tr(S)/d^2.
double average_fidelity(const Matrix& s, int k) {
  const double d = static_cast<double>(dim_of(k));
  const double f_pro = s.trace().real() / (d * d);
  return (d * f_pro + 1.0) / (d + 1.0);
}

TEST(IdleGenerator, T2EqualsTwoT1HasNoDephasing) {
  const auto g = NoiseGenerator::idle(100e-6, 200e-6);
  ASSERT_EQ(g.terms.size(), 1U);
  EXPECT_EQ(g.terms[0].op.to_string(), "-");
  EXPECT_NEAR(g.terms[0].rate, 1e4, 1e-9);
}

TEST(IdleGenerator, DecayEnvelopes) {
  const double t1 = 101e-6, t2 = 35.9e-6, t = 7e-6;
  const auto g = NoiseGenerator::idle(t1, t2);
  const Matrix s = gate_noise_superoperator(g, t).matrix;
  Matrix plus = Matrix::Constant(2, 2, 0.5);
  const Matrix out = unvec(s * vec(plus), 2);
  EXPECT_NEAR(2.0 * std::abs(out(0, 1)), std::exp(-t / t2), 1e-12);
  const Matrix excited = unvec(s * vec(DensityMatrix::basis_state({1}).matrix()), 2);
  EXPECT_NEAR(excited(1, 1).real(), std::exp(-t / t1), 1e-12);
  // Pure dephasing rate per the sigma_z convention.
  EXPECT_NEAR(g.terms[1].rate, 0.5 * (1.0 / t2 - 0.5 / t1), 1e-6);
}

TEST(IdleGenerator, ClampsUnphysicalT2) {
  std::vector<std::string> warnings;
  const auto g = NoiseGenerator::idle(50e-6, 150e-6, 0.0, &warnings);
  EXPECT_EQ(g.terms.size(), 1U);
  EXPECT_EQ(warnings.size(), 1U);
}

TEST(Depolarizing, CnotTableValue) {
  EXPECT_NEAR(depolarizing_probability(0.836e-2, 2), 0.011147, 1e-6);
}

TEST(Depolarizing, AverageFidelityRoundTrip) {
  for (int k : {1, 2})
    for (double eps : {2.2e-4, 0.836e-2, 0.03}) {
      const double p = depolarizing_probability(eps, k);
      const auto g = NoiseGenerator::depolarizing(k, p, 363e-9);
      const Matrix s = gate_noise_superoperator(g, 363e-9).matrix;
      EXPECT_NEAR(average_fidelity(s, k), 1.0 - eps, 1e-6) << k << " " << eps;
      EXPECT_NEAR(depolarizing_average_fidelity(p, k), 1.0 - eps, 1e-15);
    }
}

TEST(Depolarizing, AverageFidelityMonteCarlo) {
  const double eps = 0.02;
  const auto g = NoiseGenerator::depolarizing(1, depolarizing_probability(eps, 1), 35.5e-9);
  const Matrix s = gate_noise_superoperator(g, 35.5e-9).matrix;
  std::mt19937_64 rng(41);
  std::normal_distribution<double> n;
  double acc = 0.0;
  const int samples = 10000;
  for (int i = 0; i < samples; ++i) {
    Vector psi(2);
    psi << cplx(n(rng), n(rng)), cplx(n(rng), n(rng));
    psi.normalize();
    const Matrix out = unvec(s * vec(psi * psi.adjoint()), 2);
    acc += (psi.adjoint() * out * psi)(0).real();
  }
  EXPECT_NEAR(acc / samples, 1.0 - eps, 1e-3);
}

TEST(GateNoise, ZeroDurationIsIdentity) {
  const auto g = NoiseGenerator::depolarizing(2, 0.01, 300e-9);
  EXPECT_EQ(max_abs(gate_noise_superoperator(g, 0.0).matrix - Matrix::Identity(16, 16)), 0.0);
}

TEST(GateNoise, ChannelsAreCptp) {
  const auto cal = calibration_preset("nairobi_demo3");
  const auto p = preset("three_four");
  const auto nm = calibration_to_noise_model(cal, p.layout);
  TrotterPlan plan;
  plan.model = p.model;
  plan.layout = p.layout;
  plan.timings = gate_timings(cal, p.layout);
  const auto nc = attach_noise(trotter_step(plan, Parity::Odd), nm);
  int checked = 0;
  for (const auto& g : nc.gates)
    for (const auto& ch : g.noise) {
      const auto d = channel_diagnostics(ch.superop);
      EXPECT_GT(d.min_choi_eigenvalue, -1e-9);
      EXPECT_LT(d.trace_preservation_error, 1e-9);
      ++checked;
    }
  EXPECT_GT(checked, 50);
}

TEST(AttachNoise, ZeroModelIsNoiseless) {
  const auto p = preset("two_two");
  TrotterPlan plan;
  plan.model = p.model;
  plan.layout = p.layout;
  plan.extra_idle = 1e-6;
  const Circuit c = trotter_step(plan, Parity::Even);
  const auto nc = attach_noise(c, NoiseModel::noiseless(4));
  for (const auto& g : nc.gates) EXPECT_TRUE(g.noise.empty());
  std::mt19937_64 rng(42);
  const auto rho = testing::random_state(4, rng);
  const Matrix u = circuit_unitary(c);
  EXPECT_LT(max_abs(apply_noisy_circuit(rho, nc).matrix() - u * rho.matrix() * u.adjoint()), 1e-12);
}

TEST(AttachNoise, ScaleZeroRecoversNoiseless) {
  const auto p = preset("one_one");
  NoisePolicy policy;
  policy.scale = 0.0;
  const auto nm = calibration_to_noise_model(calibration_preset("nairobi_demo1"), p.layout, policy);
  TrotterPlan plan;
  plan.model = p.model;
  plan.layout = p.layout;
  plan.extra_idle = 1.6e-6;
  const Circuit c = trotter_step(plan, Parity::Even);
  std::mt19937_64 rng(43);
  const auto rho = testing::random_state(2, rng);
  const Matrix u = circuit_unitary(c);
  EXPECT_LT(max_abs(apply_noisy_circuit(rho, attach_noise(c, nm)).matrix() - u * rho.matrix() * u.adjoint()), 1e-14);
}

TEST(AttachNoise, SingleIdleIsDampingChannel) {
  CalibrationData cal;
  cal.name = "t";
  cal.qubits[0] = {100.0, 200.0, 0.0, 0.0};
  QubitLayout layout;
  layout.system_qubits = {0};
  const auto nm = calibration_to_noise_model(cal, layout);
  const Circuit c{1, {Gate::idle({0}, 1.6e-6)}, {}};
  const auto rho = apply_noisy_circuit(DensityMatrix::basis_state({1}), attach_noise(c, nm));
  EXPECT_NEAR(rho.matrix()(0, 0).real(), 1.0 - std::exp(-1.6e-6 / 100e-6), 1e-12);
}

TEST(AttachNoise, StepMatchesHandAssembledComposition) {
  const auto p = preset("one_one");
  const auto cal = calibration_preset("nairobi_demo1");
  const auto nm = calibration_to_noise_model(cal, p.layout);
  TrotterPlan plan;
  plan.model = p.model;
  plan.layout = p.layout;
  plan.extra_idle = 1.6e-6;
  plan.timings = gate_timings(cal, p.layout);
  const Circuit c = trotter_step(plan, Parity::Even);
  const Superoperator auto_s = noisy_circuit_superoperator(attach_noise(c, nm));

  // Oracle: full 16x16 superoperators, spectator idling on the other qubit.
  Matrix s = Matrix::Identity(16, 16);
  const double ts = cal.single_qubit_duration_ns * 1e-9;
  for (const auto& g : c.gates) {
    Matrix step = Matrix::Identity(16, 16);
    if (g.kind != GateKind::Idle) step = unitary_superoperator(embed(gate_matrix(g), g.qubits, 2)).matrix;
    std::vector<Jump> jumps;
    auto add = [&](const NoiseGenerator& gen, const std::vector<int>& qs) {
      for (const auto& j : gen.jumps()) jumps.push_back({embed(j.op, qs, 2), j.rate});
    };
    const double t = g.duration;
    if (g.kind == GateKind::Idle) {
      add(nm.idle_for(0), {0});
      add(nm.idle_for(1), {1});
    } else if (t > 0.0) {
      if (g.kind == GateKind::CNOT) add(nm.cnot.at({g.qubits[0], g.qubits[1]}), g.qubits);
      if (g.kind == GateKind::SqrtX) add(nm.sqrtx.at(g.qubits[0]), g.qubits);
      if (g.kind == GateKind::PauliX) add(nm.paulix.at(g.qubits[0]), g.qubits);
      for (int q : {0, 1})
        if (std::find(g.qubits.begin(), g.qubits.end(), q) == g.qubits.end()) add(nm.idle_for(q), {q});
    }
    if (t > 0.0) step = matrix_exponential(t * lindblad_superoperator(Matrix::Zero(4, 4), jumps).matrix) * step;
    s = step * s;
  }
  (void)ts;
  EXPECT_LT(max_abs(auto_s.matrix - s), 1e-12);
}

TEST(NoiseAlgebra, XConjugatesDampingToExcitation) {
  const Matrix x = pauli::x();
  EXPECT_LT(max_abs(x * pauli::lowering() * x - pauli::raising()), 1e-15);
  const Matrix lx = lindblad_superoperator(Matrix::Zero(2, 2), {{x * pauli::lowering() * x, 1.0}}).matrix;
  const Matrix ux = unitary_superoperator(x).matrix;
  const Matrix ld = lindblad_superoperator(Matrix::Zero(2, 2), {{pauli::lowering(), 1.0}}).matrix;
  EXPECT_LT(max_abs(ux * ld * ux - lx), 1e-15);
}

TEST(NoiseModel, MissingCalibrationEdgeNamesEdge) {
  const auto p = preset("two_two");
  auto cal = calibration_preset("lagos_demo2");
  cal.edges.clear();
  try {
    calibration_to_noise_model(cal, p.layout);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("edge"), std::string::npos) << e.what();
  }
}

TEST(NoiseModel, CoherentRotationAfterGate) {
  NoisePolicy policy;
  policy.coherent.push_back({GateKind::SqrtX, 0, PauliLabel::X, -0.01});
  CalibrationData cal;
  cal.name = "t";
  cal.qubits[5] = {1e9, 2e9, 0.0, 0.0};
  QubitLayout layout;
  layout.system_qubits = {0};
  layout.device_labels = {5};
  const auto nm = calibration_to_noise_model(cal, layout, policy);
  const auto nc = attach_noise(Circuit{1, {Gate::sx(0)}, {}}, nm);
  const Matrix expect = unitary_superoperator(matrix_exponential(-kI * (-0.01 / 2) * pauli::x()) * gate_matrix(Gate::sx(0))).matrix;
  EXPECT_LT(max_abs(noisy_circuit_superoperator(nc).matrix - expect), 1e-9);
  CoherentErrorSpec bad{GateKind::SqrtX, 0, PauliLabel::X, 4.0};
  EXPECT_THROW(bad.validate(), ValidationError);
}

TEST(Overrides, JsonRejectsUnknownField) {
  const auto j = nlohmann::json::parse(R"({"noise_scale": 1.3, "bogus": 1})");
  EXPECT_THROW(j.get<ParameterOverrides>(), ConfigError);
  const auto ok = nlohmann::json::parse(
      R"({"noise_scale": 1.3, "bath_shift": 0.17, "system_couplings": [0.5, -0.5],
          "coherent_errors": [{"gate": "SqrtX", "qubit": 0, "axis": "X", "angle": -0.01}]})");
  const auto ov = ok.get<ParameterOverrides>();
  auto p = preset("three_four");
  TrotterPlan plan;
  NoisePolicy policy;
  ov.apply(p.model, &plan, &policy);
  EXPECT_DOUBLE_EQ(policy.scale, 1.3);
  EXPECT_DOUBLE_EQ(plan.bath_shift, 0.17);
  EXPECT_DOUBLE_EQ(plan.model.system_couplings[1].value, -0.5);
  EXPECT_EQ(policy.coherent.size(), 1U);
  ParameterOverrides wrong;
  wrong.system_couplings = std::vector<double>{1.0};
  EXPECT_THROW(wrong.apply(p.model, nullptr, nullptr), ConfigError);
}

TEST(Calibration, JsonRoundTripAndPresets) {
  for (const auto& name : calibration_preset_names()) {
    const auto cal = calibration_preset(name);
    const nlohmann::json j = cal;
    const auto back = j.get<CalibrationData>();
    EXPECT_EQ(back.qubits.size(), cal.qubits.size());
    EXPECT_EQ(back.edges.size(), cal.edges.size());
  }
  EXPECT_NEAR(calibration_preset("nairobi_demo1").qubit(4).t1_us, 101.0, 1e-12);
  EXPECT_NEAR(calibration_preset("nairobi_demo1").qubit(4).t2_us, 35.9, 1e-12);
}

}  // namespace
}  // namespace noisecool
