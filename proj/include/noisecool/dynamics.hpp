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

// Continuous-time reference solvers: Lindblad propagation, the bath spectral
// function, golden-rule rates between system eigenstates, and steady states.
//
// Spectral function seen by one system spin:
//   S(w) = gamma_bg + sum_peaks v^2 gamma_- / ((gamma_-/2)^2 + (w - eps_b)^2)
// S(+dE) drives transitions that lower the system energy by dE, S(-dE) the
// reverse. A background gamma_bg corresponds to Pauli X and Y noise at
// gamma_bg / 2 each.

#ifndef NOISECOOL_DYNAMICS_HPP
#define NOISECOOL_DYNAMICS_HPP

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "noisecool/common.hpp"
#include "noisecool/density_matrix.hpp"
#include "noisecool/linalg.hpp"
#include "noisecool/model.hpp"
#include "noisecool/pauli.hpp"
#include "noisecool/superoperator.hpp"

namespace noisecool {

struct LorentzianPeak {
  double center = 0.0;  // eps_b
  double width = 1.0;   // gamma_-
  double weight = 0.0;  // v^2
};

struct SpectralFunction {
  double background = 0.0;
  std::vector<LorentzianPeak> peaks;

  void validate() const {
    if (background < 0.0) throw ValidationError("spectral function background must be >= 0");
    for (const auto& p : peaks) {
      if (!(p.width > 0.0)) throw ValidationError("spectral peak width must be > 0");
      if (p.weight < 0.0) throw ValidationError("spectral peak weight must be >= 0");
    }
  }

  double operator()(double omega) const {
    double s = background;
    for (const auto& p : peaks) {
      const double h = 0.5 * p.width;
      const double dw = omega - p.center;
      s += p.weight * p.width / (h * h + dw * dw);
    }
    return s;
  }
};

inline double spectral_function(const SpectralFunction& sf, double omega) {
  sf.validate();
  return sf(omega);
}

// Spectral parameters of the auxiliary-spin bath: bath-spin damping gamma_-
// (per bath spin) and a background rate per system spin.
inline std::vector<SpectralFunction> system_spectral_functions(const SpinModel& model,
                                                               const std::vector<double>& bath_gamma,
                                                               const std::vector<double>& background) {
  model.validate();
  if (static_cast<int>(bath_gamma.size()) != model.bath_count())
    throw ValidationError("bath_gamma needs one entry per bath spin");
  if (static_cast<int>(background.size()) != model.system_count())
    throw ValidationError("background needs one entry per system spin");
  std::vector<SpectralFunction> out(static_cast<std::size_t>(model.system_count()));
  for (int i = 0; i < model.system_count(); ++i) out[static_cast<std::size_t>(i)].background = background[static_cast<std::size_t>(i)];
  for (const auto& c : model.sb_couplings)
    out[static_cast<std::size_t>(c.a)].peaks.push_back(
        {model.bath_splittings[static_cast<std::size_t>(c.b)], bath_gamma[static_cast<std::size_t>(c.b)], c.value * c.value});
  for (const auto& s : out) s.validate();
  return out;
}

// Detailed-balance estimate p_excited / p_ground for a single spin.
inline double population_ratio_estimate(const SpectralFunction& sf, double eps_s) {
  if (!(eps_s > 0.0)) throw ValidationError("population_ratio_estimate: eps_s must be > 0");
  const double down = spectral_function(sf, eps_s);
  if (down == 0.0) throw NumericalError("population_ratio_estimate: S(eps_s) = 0");
  return sf(-eps_s) / down;
}

// ---------------------------------------------------------------------------
// Pauli master equation

struct RateMatrix {
  RealMatrix rates;  // rates(n, k) = Gamma_{n <- k}
  std::vector<std::string> labels;

  // dp/dt = W p with column sums zero.
  RealMatrix generator() const {
    RealMatrix w = rates;
    for (Eigen::Index k = 0; k < w.cols(); ++k) {
      w(k, k) = 0.0;
      w(k, k) = -w.col(k).sum();
    }
    return w;
  }
};

// Golden-rule rates between system product eigenstates (basis index order).
inline RateMatrix golden_rule_rates(const SpinModel& model, const std::vector<SpectralFunction>& per_spin) {
  model.validate();
  const int ns = model.system_count();
  if (static_cast<int>(per_spin.size()) != ns)
    throw ValidationError("golden_rule_rates: one spectral function per system spin required");
  for (const auto& s : per_spin) s.validate();
  const Matrix hs = system_hamiltonian(model);
  const auto d = static_cast<Eigen::Index>(dim_of(ns));
  RateMatrix r;
  r.rates = RealMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    std::string label;
    for (int q = 0; q < ns; ++q) label += ((k >> (ns - 1 - q)) & 1) ? 'd' : 'u';
    r.labels.push_back(label);
  }
  for (int i = 0; i < ns; ++i) {
    const Matrix sx = PauliString::single(ns, i, PauliLabel::X).matrix();
    for (Eigen::Index k = 0; k < d; ++k)
      for (Eigen::Index n = 0; n < d; ++n) {
        if (n == k) continue;
        const double m2 = std::norm(sx(n, k));
        if (m2 == 0.0) continue;
        const double de = hs(k, k).real() - hs(n, n).real();
        r.rates(n, k) += m2 * per_spin[static_cast<std::size_t>(i)](de);
      }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Steady states

// Unique normalized null vector; errors if the nullspace is degenerate.
inline RealVector steady_state(const RateMatrix& rm, double tolerance = 1e-10) {
  const RealMatrix w = rm.generator();
  Eigen::JacobiSVD<RealMatrix> svd(w, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const Eigen::Index d = w.cols();
  const double scale = std::max(1.0, s(0));
  int null_dim = 0;
  for (Eigen::Index i = 0; i < d; ++i)
    if (s(i) <= tolerance * scale) ++null_dim;
  if (null_dim != 1)
    throw NumericalError("steady_state: nullspace dimension " + std::to_string(null_dim) + " (expected 1)");
  RealVector p = svd.matrixV().col(d - 1);
  p /= p.sum();
  return p;
}

inline DensityMatrix steady_state(const Superoperator& gen, double tolerance = 1e-9) {
  if (gen.n_qubits > 5) throw DimensionError("steady_state: dense nullspace limited to 5 qubits");
  const auto d2 = gen.matrix.rows();
  const auto d = static_cast<Eigen::Index>(dim_of(gen.n_qubits));
  Eigen::BDCSVD<Matrix> svd(gen.matrix, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double scale = std::max(1.0, s(0));
  int null_dim = 0;
  for (Eigen::Index i = 0; i < d2; ++i)
    if (s(i) <= tolerance * scale) ++null_dim;
  if (null_dim != 1)
    throw NumericalError("steady_state: nullspace dimension " + std::to_string(null_dim) + " (expected 1)");
  Matrix rho = unvec(svd.matrixV().col(d2 - 1), d);
  rho /= rho.trace();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  const double residual = (gen.matrix * vec(rho)).norm();
  if (residual > tolerance * scale)
    throw NumericalError("steady_state: residual " + std::to_string(residual) + " above tolerance");
  return DensityMatrix::unchecked(std::move(rho));
}

// ---------------------------------------------------------------------------
// Lindblad propagation

enum class Propagator { Auto, Exact, RK4 };

struct TrajectoryPoint {
  double t = 0.0;
  DensityMatrix rho;
};

// Samples rho(k dt) for k = 0..round(t/dt). Exact uses e^{dt L}; RK4 applies
// the generator matrix-free (any register size).
inline std::vector<TrajectoryPoint> propagate_lindblad(const DensityMatrix& rho0, const Matrix& h,
                                                       const std::vector<Jump>& jumps, double t, double dt,
                                                       Propagator method = Propagator::Auto) {
  if (!(dt > 0.0)) throw ValidationError("propagate_lindblad: dt must be > 0");
  if (t < 0.0) throw ValidationError("propagate_lindblad: t must be >= 0");
  require_square(h, "propagate_lindblad");
  if (h.rows() != rho0.dim()) throw DimensionError("propagate_lindblad: H and rho dimensions differ");
  if (!is_hermitian(h, 1e-9)) throw ValidationError("propagate_lindblad: H is not Hermitian");
  for (const auto& j : jumps) {
    if (j.rate < 0.0) throw ValidationError("propagate_lindblad: negative rate");
    if (j.op.rows() != h.rows() || !is_square(j.op)) throw DimensionError("propagate_lindblad: jump size mismatch");
  }
  const auto steps = static_cast<long long>(std::llround(t / dt));
  if (method == Propagator::Auto) method = rho0.n_qubits() <= 4 ? Propagator::Exact : Propagator::RK4;

  std::vector<TrajectoryPoint> out;
  out.push_back({0.0, rho0});
  const Eigen::Index d = rho0.dim();
  if (method == Propagator::Exact) {
    const Matrix step = matrix_exponential(dt * lindblad_superoperator(h, jumps).matrix);
    Vector v = vec(rho0.matrix());
    for (long long k = 1; k <= steps; ++k) {
      v = step * v;
      out.push_back({static_cast<double>(k) * dt, DensityMatrix::unchecked(unvec(v, d))});
    }
    return out;
  }
  std::vector<Matrix> ldl;
  for (const auto& j : jumps) ldl.push_back(j.op.adjoint() * j.op);
  auto rhs = [&](const Matrix& r) {
    Matrix o = -kI * (h * r - r * h);
    for (std::size_t i = 0; i < jumps.size(); ++i) {
      if (jumps[i].rate == 0.0) continue;
      const Matrix& l = jumps[i].op;
      o += jumps[i].rate * (l * r * l.adjoint() - 0.5 * (ldl[i] * r + r * ldl[i]));
    }
    return o;
  };
  Matrix r = rho0.matrix();
  for (long long k = 1; k <= steps; ++k) {
    const Matrix k1 = rhs(r);
    const Matrix k2 = rhs(r + 0.5 * dt * k1);
    const Matrix k3 = rhs(r + 0.5 * dt * k2);
    const Matrix k4 = rhs(r + dt * k3);
    r += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    out.push_back({static_cast<double>(k) * dt, DensityMatrix::unchecked(r)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reference Lindblad model of system spins coupled to damped bath spins

struct ReferenceLindblad {
  Matrix hamiltonian;
  std::vector<Jump> jumps;
};

// Bath spin j damped at bath_gamma[j]; system spin i with Pauli X and Y noise
// at background[i] / 2 each. Logical layout (system spins first).
inline ReferenceLindblad reference_lindblad(const SpinModel& model, const std::vector<double>& bath_gamma,
                                            const std::vector<double>& background) {
  model.validate();
  if (static_cast<int>(bath_gamma.size()) != model.bath_count() ||
      static_cast<int>(background.size()) != model.system_count())
    throw ValidationError("reference_lindblad: rate vectors do not match the model");
  const int n = model.total_count();
  ReferenceLindblad ref;
  ref.hamiltonian = total_hamiltonian(model);
  for (int i = 0; i < model.system_count(); ++i) {
    const double g = 0.5 * background[static_cast<std::size_t>(i)];
    ref.jumps.push_back({PauliString::single(n, i, PauliLabel::X).matrix(), g});
    ref.jumps.push_back({PauliString::single(n, i, PauliLabel::Y).matrix(), g});
  }
  for (int j = 0; j < model.bath_count(); ++j)
    ref.jumps.push_back({PauliString::single(n, model.system_count() + j, PauliLabel::Minus).matrix(),
                         bath_gamma[static_cast<std::size_t>(j)]});
  return ref;
}

}  // namespace noisecool

#endif  // NOISECOOL_DYNAMICS_HPP
