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

// Superoperators in the column-stacking convention:
//   vec(A rho B) = (B^T kron A) vec(rho),   vec(rho)[r + d*c] = rho(r, c).
// Composition S2 * S1 means "S1 first".

#ifndef NOISECOOL_SUPEROPERATOR_HPP
#define NOISECOOL_SUPEROPERATOR_HPP

#include <string>
#include <vector>

#include "noisecool/common.hpp"
#include "noisecool/density_matrix.hpp"
#include "noisecool/linalg.hpp"

namespace noisecool {

struct Superoperator {
  int n_qubits = 0;
  Matrix matrix;

  static Superoperator identity(int n_qubits) {
    const auto d2 = static_cast<Eigen::Index>(dim_of(2 * n_qubits));
    return {n_qubits, Matrix::Identity(d2, d2)};
  }

  Superoperator then(const Superoperator& next) const { return {n_qubits, next.matrix * matrix}; }
};

// Jump operator with a non-negative rate: rate * (L rho L^dag - {L^dag L, rho}/2).
struct Jump {
  Matrix op;
  double rate = 0.0;
};

inline int qubits_for_dim(Eigen::Index d) {
  int n = 0;
  while ((Eigen::Index{1} << n) < d) ++n;
  if ((Eigen::Index{1} << n) != d) throw DimensionError("dimension is not a power of two");
  return n;
}

inline Superoperator unitary_superoperator(const Matrix& u) {
  require_square(u, "unitary_superoperator");
  if (!is_unitary(u)) throw ValidationError("unitary_superoperator: matrix is not unitary");
  return {qubits_for_dim(u.rows()), kron(u.conjugate(), u)};
}

inline Matrix dissipator_matrix(const Matrix& l) {
  const auto d = l.rows();
  const Matrix id = Matrix::Identity(d, d);
  const Matrix ldl = l.adjoint() * l;
  return kron(l.conjugate(), l) - 0.5 * kron(id, ldl) - 0.5 * kron(ldl.transpose(), id);
}

inline Matrix hamiltonian_generator_matrix(const Matrix& h) {
  const auto d = h.rows();
  const Matrix id = Matrix::Identity(d, d);
  return -kI * (kron(id, h) - kron(h.transpose(), id));
}

// Generator of d rho/dt = i[rho, H] + sum_k rate_k D[L_k] rho.
inline Superoperator lindblad_superoperator(const Matrix& h, const std::vector<Jump>& jumps) {
  require_square(h, "lindblad_superoperator");
  if (!is_hermitian(h, 1e-9)) throw ValidationError("lindblad_superoperator: H is not Hermitian");
  Matrix gen = hamiltonian_generator_matrix(h);
  for (const auto& j : jumps) {
    if (j.rate < 0.0) throw ValidationError("lindblad_superoperator: negative rate");
    if (j.op.rows() != h.rows() || !is_square(j.op))
      throw DimensionError("lindblad_superoperator: jump operator size mismatch");
    if (j.rate == 0.0) continue;
    gen += j.rate * dissipator_matrix(j.op);
  }
  return {qubits_for_dim(h.rows()), std::move(gen)};
}

inline DensityMatrix apply(const Superoperator& s, const DensityMatrix& rho) {
  if (s.matrix.cols() != rho.dim() * rho.dim())
    throw DimensionError("apply: superoperator and state dimensions differ");
  return DensityMatrix::unchecked(unvec(s.matrix * vec(rho.matrix()), rho.dim()));
}

// Choi matrix J = sum_ij |i><j| kron S(|i><j|).
inline Matrix choi_matrix(const Matrix& s) {
  const auto d2 = s.rows();
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(d2))));
  Matrix j = Matrix::Zero(d2, d2);
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index r = 0; r < d; ++r) {
      const Matrix out = unvec(s.col(r + d * c), d);
      j.block(r * d, c * d, d, d) = out;
    }
  return j;
}

// Kraus operators from the Choi matrix; eigenvalues below `cutoff` dropped.
inline std::vector<Matrix> kraus_decomposition(const Matrix& s, double cutoff = 1e-14) {
  const Matrix j = choi_matrix(s);
  const auto d2 = j.rows();
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(d2))));
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (j + j.adjoint()));
  std::vector<Matrix> ks;
  for (Eigen::Index k = d2 - 1; k >= 0; --k) {
    const double lambda = es.eigenvalues()(k);
    if (lambda <= cutoff) continue;
    Matrix kop(d, d);
    const auto v = es.eigenvectors().col(k);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index a = 0; a < d; ++a) kop(a, i) = std::sqrt(lambda) * v(i * d + a);
    ks.push_back(std::move(kop));
  }
  return ks;
}

struct ChannelDiagnostics {
  double min_choi_eigenvalue = 0.0;
  double trace_preservation_error = 0.0;
};

inline ChannelDiagnostics channel_diagnostics(const Matrix& s) {
  ChannelDiagnostics out;
  const Matrix j = choi_matrix(s);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (j + j.adjoint()), Eigen::EigenvaluesOnly);
  out.min_choi_eigenvalue = es.eigenvalues().minCoeff();
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(s.rows()))));
  const Vector id = vec(Matrix::Identity(d, d));
  out.trace_preservation_error = (s.adjoint() * id - id).cwiseAbs().maxCoeff();
  return out;
}

inline bool is_cptp(const Matrix& s, double tolerance = 1e-9) {
  const auto diag = channel_diagnostics(s);
  return diag.min_choi_eigenvalue >= -tolerance && diag.trace_preservation_error <= tolerance;
}

}  // namespace noisecool

#endif  // NOISECOOL_SUPEROPERATOR_HPP
